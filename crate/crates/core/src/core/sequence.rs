use std::fmt;
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;

use super::alphabet::{Alphabet, Sym};
use super::bound::BoundFunction;
use super::word::Word;
use crate::error::{Result, SeqError};

/// Environment variable overriding the evaluation horizon cap.
pub const HORIZON_ENV: &str = "APSEQ_HORIZON_CAP";

pub const DEFAULT_HORIZON_CAP: usize = 10_000_000;

const PAGE: usize = 4096;

/// Largest prefix any sequence will materialize.
pub fn horizon_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(HORIZON_ENV)
            .ok()
            .and_then(|v| v.trim().replace('_', "").parse().ok())
            .unwrap_or(DEFAULT_HORIZON_CAP)
    })
}

pub(crate) fn check_cap(len: usize) -> Result<()> {
    let cap = horizon_cap();
    if len > cap {
        Err(SeqError::HorizonExhausted { requested: len, cap })
    } else {
        Ok(())
    }
}

/// Produces a sequence prefix.
///
/// `fill` is handed the currently known prefix and must extend it to at least `len` symbols.
/// It may read what is already in `buf`, which is how self-describing sequences are generated.
pub trait Oracle: Send + Sync {
    fn fill(&self, buf: &mut Vec<Sym>, len: usize) -> Result<()>;
}

impl<F> Oracle for F
where
    F: Fn(&mut Vec<Sym>, usize) -> Result<()> + Send + Sync,
{
    fn fill(&self, buf: &mut Vec<Sym>, len: usize) -> Result<()> {
        self(buf, len)
    }
}

/// Oracle from a random-access function `i -> x(i)`.
pub struct IndexOracle<F>(pub F);

impl<F> Oracle for IndexOracle<F>
where
    F: Fn(usize) -> Result<Sym> + Send + Sync,
{
    fn fill(&self, buf: &mut Vec<Sym>, len: usize) -> Result<()> {
        buf.reserve(len.saturating_sub(buf.len()));
        for i in buf.len()..len {
            buf.push((self.0)(i)?);
        }
        Ok(())
    }
}

/// Family name and parameters a sequence was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub family: String,
    pub params: Vec<(String, String)>,
}

impl Provenance {
    pub fn new(family: impl Into<String>) -> Self {
        Provenance { family: family.into(), params: Vec::new() }
    }

    pub fn with(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.params.push((key.into(), value.to_string()));
        self
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.family)?;
        if !self.params.is_empty() {
            let p: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "({})", p.join(", "))?;
        }
        Ok(())
    }
}

/// Known eventual period `x(i) = x(i + period)` for `i >= preperiod`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeriodInfo {
    pub preperiod: usize,
    pub period: usize,
}

struct Inner {
    alphabet: Alphabet,
    oracle: Arc<dyn Oracle>,
    cache: RwLock<Vec<Sym>>,
    bound: Option<BoundFunction>,
    period: Option<PeriodInfo>,
    provenance: Provenance,
}

/// An immutable infinite sequence `x: N -> A` backed by a memoized prefix.
///
/// Cloning is cheap and clones share the cache.
#[derive(Clone)]
pub struct Sequence {
    inner: Arc<Inner>,
}

impl Sequence {
    pub fn new(alphabet: Alphabet, oracle: impl Oracle + 'static, provenance: Provenance) -> Self {
        Self::from_arc(alphabet, Arc::new(oracle), provenance, None, None)
    }

    fn from_arc(
        alphabet: Alphabet,
        oracle: Arc<dyn Oracle>,
        provenance: Provenance,
        bound: Option<BoundFunction>,
        period: Option<PeriodInfo>,
    ) -> Self {
        Sequence {
            inner: Arc::new(Inner {
                alphabet,
                oracle,
                cache: RwLock::new(Vec::new()),
                bound,
                period,
                provenance,
            }),
        }
    }

    /// Same sequence with a certified regulator bound attached (or removed).
    pub fn with_bound(&self, bound: Option<BoundFunction>) -> Self {
        let s = Self::from_arc(
            self.inner.alphabet.clone(),
            self.inner.oracle.clone(),
            self.inner.provenance.clone(),
            bound,
            self.inner.period,
        );
        s.seed_cache(self);
        s
    }

    pub fn with_period(&self, period: Option<PeriodInfo>) -> Self {
        let s = Self::from_arc(
            self.inner.alphabet.clone(),
            self.inner.oracle.clone(),
            self.inner.provenance.clone(),
            self.inner.bound.clone(),
            period,
        );
        s.seed_cache(self);
        s
    }

    pub fn with_provenance(&self, provenance: Provenance) -> Self {
        let s = Self::from_arc(
            self.inner.alphabet.clone(),
            self.inner.oracle.clone(),
            provenance,
            self.inner.bound.clone(),
            self.inner.period,
        );
        s.seed_cache(self);
        s
    }

    fn seed_cache(&self, from: &Sequence) {
        let src = from.inner.cache.read();
        if !src.is_empty() {
            *self.inner.cache.write() = src.clone();
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.inner.alphabet
    }

    pub fn provenance(&self) -> &Provenance {
        &self.inner.provenance
    }

    pub fn certified_bound(&self) -> Option<&BoundFunction> {
        self.inner.bound.as_ref()
    }

    pub fn period_info(&self) -> Option<PeriodInfo> {
        self.inner.period
    }

    /// Number of symbols currently memoized.
    pub fn cached_len(&self) -> usize {
        self.inner.cache.read().len()
    }

    /// Extends the memo cache to at least `len` symbols.
    pub fn ensure(&self, len: usize) -> Result<()> {
        if self.inner.cache.read().len() >= len {
            return Ok(());
        }
        check_cap(len)?;
        let mut cache = self.inner.cache.write();
        let cur = cache.len();
        if cur >= len {
            return Ok(());
        }
        let target = len.max(cur.saturating_mul(2)).max(PAGE).min(horizon_cap()).max(len);
        let res = self.inner.oracle.fill(&mut cache, target);
        match res {
            Err(SeqError::HorizonExhausted { .. }) if target > len && cache.len() < len => {
                self.inner.oracle.fill(&mut cache, len)?;
            }
            Err(e) if cache.len() < len => return Err(e),
            _ => {}
        }
        debug_assert!(cache.len() >= len);
        Ok(())
    }

    /// `x(i)`.
    pub fn get(&self, i: usize) -> Result<Sym> {
        self.ensure(i + 1)?;
        Ok(self.inner.cache.read()[i])
    }

    /// Runs `f` on the first `n` symbols without copying them.
    pub fn with_prefix<R>(&self, n: usize, f: impl FnOnce(&[Sym]) -> R) -> Result<R> {
        self.ensure(n)?;
        let cache = self.inner.cache.read();
        Ok(f(&cache[..n]))
    }

    /// Copy of `x[i, j)` (half open).
    pub fn range(&self, i: usize, j: usize) -> Result<Vec<Sym>> {
        if j <= i {
            return Ok(Vec::new());
        }
        self.ensure(j)?;
        Ok(self.inner.cache.read()[i..j].to_vec())
    }

    /// Copy of `x[0, n)`.
    pub fn symbols(&self, n: usize) -> Result<Vec<Sym>> {
        self.range(0, n)
    }

    /// `x[0, n-1]` as a word; `n = 0` gives Λ.
    pub fn prefix(&self, n: usize) -> Result<Word> {
        Ok(Word::from_raw(self.alphabet().clone(), self.symbols(n)?))
    }

    /// Recomputes `x[0, n)` through the oracle, bypassing the cache.
    pub fn uncached(&self, n: usize) -> Result<Vec<Sym>> {
        check_cap(n)?;
        let mut buf = Vec::new();
        self.inner.oracle.fill(&mut buf, n)?;
        buf.truncate(n);
        Ok(buf)
    }

    /// Renders `x[0, n)`.
    pub fn render(&self, n: usize) -> Result<String> {
        Ok(self.prefix(n)?.to_string())
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sequence({})", self.inner.provenance)
    }
}
