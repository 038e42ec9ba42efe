use std::fmt;
use std::sync::Arc;

use crate::error::{Result, SeqError};

type BoundFn = dyn Fn(u64) -> Option<u64> + Send + Sync;

/// A monotone upper bound `n -> l` on a regulator, with a note on where the formula comes from.
///
/// Evaluation returns `None` on arithmetic overflow.
#[derive(Clone)]
pub struct BoundFunction {
    f: Arc<BoundFn>,
    provenance: Arc<str>,
    slope: Option<u64>,
}

impl BoundFunction {
    pub fn new<F>(provenance: impl Into<String>, f: F) -> Self
    where
        F: Fn(u64) -> Option<u64> + Send + Sync + 'static,
    {
        BoundFunction { f: Arc::new(f), provenance: provenance.into().into(), slope: None }
    }

    /// `n -> c * n`.
    pub fn linear(c: u64) -> Self {
        let mut b = Self::new(format!("{c}*n"), move |n| n.checked_mul(c));
        b.slope = Some(c);
        b
    }

    pub fn eval(&self, n: u64) -> Option<u64> {
        (self.f)(n)
    }

    /// Evaluates and checks the `l >= n` invariant.
    pub fn at(&self, n: u64) -> Result<u64> {
        let l = self.eval(n).ok_or(SeqError::BoundOverflow)?;
        if l < n {
            return Err(SeqError::InvalidArgument(format!(
                "bound {} gives {l} < n = {n}",
                self.provenance
            )));
        }
        Ok(l)
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn slope(&self) -> Option<u64> {
        self.slope
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into().into();
        self
    }
}

impl fmt::Debug for BoundFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoundFunction({})", self.provenance)
    }
}
