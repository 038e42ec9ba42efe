use crate::core::BoundFunction;
use crate::error::{Result, SeqError};

/// The bound formulas for the image of a sequence with regulator bound `g` under an
/// `m`-state machine.
#[derive(Clone, Debug)]
pub struct BoundFormulas {
    /// `h(h(n))` with `h = (g+1)^m - 1`.
    pub image_bound: BoundFunction,
    /// `(g+1)^m(n) - 1`, for reversible and almost reversible machines.
    pub reversible_bound: BoundFunction,
    /// `g^m(1) + ... + g(1)`; `None` on overflow.
    pub prefix_bound: Option<u64>,
    /// `C^{2m} n + C^{2m-1} + ... + 1` when `g(n) = C n`.
    pub linear_bound: Option<BoundFunction>,
}

const MONOTONE_CHECK: u64 = 64;

fn iterate_plus_one(g: &BoundFunction, m: usize, n: u64) -> Option<u64> {
    let mut v = n;
    for _ in 0..m {
        v = g.eval(v)?.checked_add(1)?;
    }
    Some(v)
}

/// `h(n) = (g+1)^m(n) - 1`.
pub(crate) fn h_of(g: &BoundFunction, m: usize, n: u64) -> Option<u64> {
    iterate_plus_one(g, m, n).map(|v| v - 1)
}

pub fn image_bound(g: &BoundFunction, m: usize) -> BoundFunction {
    let g = g.clone();
    let prov = format!("h(h(n)), h=(g+1)^{m}-1, g={}", g.provenance());
    BoundFunction::new(prov, move |n| h_of(&g, m, h_of(&g, m, n)?))
}

pub fn reversible_bound(g: &BoundFunction, m: usize) -> BoundFunction {
    let g = g.clone();
    let prov = format!("(g+1)^{m}(n)-1, g={}", g.provenance());
    BoundFunction::new(prov, move |n| h_of(&g, m, n))
}

pub fn prefix_bound(g: &BoundFunction, m: usize) -> Option<u64> {
    let mut v = 1u64;
    let mut sum = 0u64;
    for _ in 0..m {
        v = g.eval(v)?;
        sum = sum.checked_add(v)?;
    }
    Some(sum)
}

pub fn linear_bound(c: u64, m: usize) -> BoundFunction {
    let k = 2 * m as u32;
    BoundFunction::new(format!("{c}^{k}n+...+1"), move |n| {
        let mut tail = 0u64;
        let mut p = 1u64;
        for _ in 0..k {
            tail = tail.checked_add(p)?;
            p = p.checked_mul(c)?;
        }
        p.checked_mul(n)?.checked_add(tail)
    })
}

pub fn bound_formulas(g: &BoundFunction, m: usize) -> Result<BoundFormulas> {
    if m == 0 {
        return Err(SeqError::InvalidArgument("state count must be at least 1".into()));
    }
    for n in 1..=MONOTONE_CHECK {
        if let Some(v) = g.eval(n) {
            if v < n {
                return Err(SeqError::InvalidArgument(format!("g({n}) = {v} < {n}")));
            }
        }
    }
    Ok(BoundFormulas {
        image_bound: image_bound(g, m),
        reversible_bound: reversible_bound(g, m),
        prefix_bound: prefix_bound(g, m),
        linear_bound: g.slope().map(|c| linear_bound(c, m)),
    })
}
