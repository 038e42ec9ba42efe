use std::collections::HashMap;

use crate::core::{PeriodInfo, Sequence, Sym};
use crate::error::{Result, SeqError};

/// Dense ids for the length-`n` windows of `s`, in order of first appearance, and their count.
pub(crate) fn factor_ids(s: &[Sym], k: usize, n: usize) -> (Vec<u32>, usize) {
    if n == 0 || s.len() < n {
        return (Vec::new(), 0);
    }
    let bits = (usize::BITS - (k.max(2) - 1).leading_zeros()) as usize;
    let count = s.len() - n + 1;
    let mut ids = Vec::with_capacity(count);
    if bits * n <= 64 {
        let mask = if bits * n == 64 { u64::MAX } else { (1u64 << (bits * n)) - 1 };
        let mut map: HashMap<u64, u32> = HashMap::new();
        let mut code = 0u64;
        for (i, &a) in s.iter().enumerate() {
            code = ((code << bits) | a as u64) & mask;
            if i + 1 >= n {
                let next = map.len() as u32;
                ids.push(*map.entry(code).or_insert(next));
            }
        }
        (ids, map.len())
    } else {
        let mut map: HashMap<&[Sym], u32> = HashMap::new();
        for i in 0..count {
            let next = map.len() as u32;
            ids.push(*map.entry(&s[i..i + n]).or_insert(next));
        }
        (ids, map.len())
    }
}

/// `p_x(n)` measured on a prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityReport {
    pub n: usize,
    pub count: usize,
    /// The horizon reaches past `f(n) + n` for the certified bound `f`, so the count is exact.
    pub exact: bool,
    pub horizon: usize,
}

pub fn subword_complexity(x: &Sequence, n: usize, horizon: usize) -> Result<ComplexityReport> {
    if horizon < n {
        return Err(SeqError::HorizonTooSmall { horizon, need: n });
    }
    let count = x.with_prefix(horizon, |s| factor_ids(s, x.alphabet().len(), n).1)?;
    let exact = match x.certified_bound() {
        Some(f) => f.eval(n as u64).is_some_and(|l| l.saturating_add(n as u64) <= horizon as u64),
        None => false,
    };
    Ok(ComplexityReport { n, count, exact, horizon })
}

/// `(1/n) log2 p_x(n)`.
pub fn entropy_estimate(x: &Sequence, n: usize, horizon: usize) -> Result<f64> {
    if n == 0 {
        return Err(SeqError::InvalidArgument("entropy needs n >= 1".into()));
    }
    let p = subword_complexity(x, n, horizon)?.count;
    Ok((p as f64).log2() / n as f64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScreenReport {
    /// `(n, p_x(n))` on the prefix.
    pub complexity: Vec<(usize, usize)>,
    /// Least `n` with `p_x(n) <= n`.
    pub triggered_at: Option<usize>,
    /// Eventual period confirmed on the prefix.
    pub period: Option<PeriodInfo>,
    pub horizon: usize,
}

pub const SCREEN_MAX_N: usize = 32;

/// Measures `p_x(n)` for small `n`; when `p_x(n) <= n` the prefix is searched for an eventual
/// period `<= n` that holds over at least the second half of the horizon.
pub fn periodicity_screen(x: &Sequence, horizon: usize) -> Result<ScreenReport> {
    if horizon < 4 {
        return Err(SeqError::HorizonTooSmall { horizon, need: 4 });
    }
    let n_max = SCREEN_MAX_N.min(horizon / 4);
    let k = x.alphabet().len();
    x.with_prefix(horizon, |s| {
        let mut complexity = Vec::new();
        let mut triggered_at = None;
        for n in 1..=n_max {
            let p = factor_ids(s, k, n).1;
            complexity.push((n, p));
            if p <= n && triggered_at.is_none() {
                triggered_at = Some(n);
            }
        }
        let period = triggered_at.and_then(|n| detect_period(s, n));
        ScreenReport { complexity, triggered_at, period, horizon }
    })
}

/// Least period `p <= max_p` with `s[i] = s[i+p]` from some `i <= |s|/2` on, with that least
/// preperiod.
pub(crate) fn detect_period(s: &[Sym], max_p: usize) -> Option<PeriodInfo> {
    for p in 1..=max_p.min(s.len() / 2) {
        let mut pre = 0;
        for i in (0..s.len() - p).rev() {
            if s[i] != s[i + p] {
                pre = i + 1;
                break;
            }
        }
        if pre <= s.len() / 2 {
            return Some(PeriodInfo { preperiod: pre, period: p });
        }
    }
    None
}
