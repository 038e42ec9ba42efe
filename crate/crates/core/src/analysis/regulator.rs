use std::fmt;

use super::factors::factor_ids;
use crate::core::{Sequence, Sym, Word};
use crate::error::{Result, SeqError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RegulatorKind {
    EmpiricalLower,
    CertifiedExact,
    CertifiedUpper,
}

impl fmt::Display for RegulatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegulatorKind::EmpiricalLower => "empirical-lower",
            RegulatorKind::CertifiedExact => "certified-exact",
            RegulatorKind::CertifiedUpper => "certified-upper",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegulatorReport {
    pub n: usize,
    pub value: usize,
    pub kind: RegulatorKind,
    pub horizon: usize,
    /// Length-`n` factors judged to occur finitely often.
    pub finite: Vec<Word>,
}

#[derive(Clone, Copy)]
struct Occ {
    first: usize,
    last: usize,
    gap: usize,
}

/// Per factor id: first and last start and the largest distance between consecutive starts.
fn occurrence_stats(ids: &[u32], count: usize) -> Vec<Occ> {
    let mut st = vec![Occ { first: usize::MAX, last: 0, gap: 0 }; count];
    for (i, &id) in ids.iter().enumerate() {
        let o = &mut st[id as usize];
        if o.first == usize::MAX {
            o.first = i;
        } else {
            o.gap = o.gap.max(i - o.last);
        }
        o.last = i;
    }
    st
}

/// Least `l` such that every window of `s` of length `l` (including the leading and trailing
/// ones) contains a factor with statistics `o`.
fn window_term(o: &Occ, n: usize, len: usize) -> usize {
    let lead = o.first + n;
    let inner = if o.gap > 0 { o.gap + n - 1 } else { 0 };
    let trail = len - o.last;
    lead.max(inner).max(trail)
}

fn word(x: &Sequence, s: &[Sym]) -> Word {
    Word::new(x.alphabet().clone(), s.to_vec()).expect("prefix symbols lie in the alphabet")
}

/// `r_x(n)` on `x[0, horizon)`: a factor not seen in the second half of the prefix counts as
/// finitely occurring and only forces the cutoff past its last occurrence; every other factor
/// must occur in every window, including the windows at the very start.
pub fn empirical_regulator(x: &Sequence, n: usize, horizon: usize) -> Result<RegulatorReport> {
    if n == 0 {
        return Err(SeqError::InvalidArgument("factor length must be positive".into()));
    }
    if horizon < 4 * n {
        return Err(SeqError::HorizonTooSmall { horizon, need: 4 * n });
    }
    let k = x.alphabet().len();
    x.with_prefix(horizon, |s| {
        let (ids, count) = factor_ids(s, k, n);
        let stats = occurrence_stats(&ids, count);
        let half = horizon / 2;
        let mut value = n;
        let mut finite = Vec::new();
        for o in &stats {
            if o.last < half {
                value = value.max(o.last + 1);
                finite.push(word(x, &s[o.last..o.last + n]));
            } else {
                value = value.max(window_term(o, n, horizon));
            }
        }
        finite.sort();
        RegulatorReport { n, value, kind: RegulatorKind::EmpiricalLower, horizon, finite }
    })
}

/// The exact `r_x(n)` from a certified bound `f`: infinitely occurring factors are those of
/// `x[f, 2f]`, the others come from `x[0, f + n]`, and window lengths are measured on
/// `x[0, 2 f(f(n)) + f(n)]`, which contains every factor of length `f(n)`.
pub fn certified_regulator(x: &Sequence, n: usize) -> Result<RegulatorReport> {
    if n == 0 {
        return Err(SeqError::InvalidArgument("factor length must be positive".into()));
    }
    let bound = x
        .certified_bound()
        .ok_or_else(|| SeqError::MissingBound(format!("{} carries no certified bound", x.provenance())))?;
    let f = bound.at(n as u64)?;
    let ff = bound.at(f)?;
    let plen = ff
        .checked_mul(2)
        .and_then(|v| v.checked_add(f))
        .and_then(|v| v.checked_add(1))
        .ok_or(SeqError::BoundOverflow)?;
    let plen = usize::try_from(plen).map_err(|_| SeqError::BoundOverflow)?;
    let f = f as usize;
    let k = x.alphabet().len();
    x.ensure(plen.max(2 * f + 1))?;
    x.with_prefix(plen.max(2 * f + 1), |s| {
        let (ids, count) = factor_ids(&s[..plen], k, n);
        let mut infinite = vec![false; count];
        for &id in &ids[f..=2 * f + 1 - n] {
            infinite[id as usize] = true;
        }
        let stats = occurrence_stats(&ids, count);
        let (mut l1, mut l2) = (0, n);
        let mut finite = Vec::new();
        for (id, o) in stats.iter().enumerate() {
            if infinite[id] {
                l2 = l2.max(window_term(o, n, plen));
            } else {
                l1 = l1.max(o.last + 1);
                finite.push(word(x, &s[o.last..o.last + n]));
            }
        }
        finite.sort();
        (l1.max(l2), finite)
    })
    .and_then(|(value, finite)| {
        if value > f {
            return Err(SeqError::BoundDefect { n, bound: f as u64, observed: value as u64 });
        }
        Ok(RegulatorReport { n, value, kind: RegulatorKind::CertifiedExact, horizon: plen, finite })
    })
}

/// The certified bound itself as a report.
pub fn certified_upper(x: &Sequence, n: usize) -> Result<RegulatorReport> {
    let bound = x
        .certified_bound()
        .ok_or_else(|| SeqError::MissingBound(format!("{} carries no certified bound", x.provenance())))?;
    let value = bound.at(n as u64)?;
    Ok(RegulatorReport {
        n,
        value: usize::try_from(value).map_err(|_| SeqError::BoundOverflow)?,
        kind: RegulatorKind::CertifiedUpper,
        horizon: 0,
        finite: Vec::new(),
    })
}

/// `r'_x(n)`: least `l` such that `x[0, n-1]` occurs in every length-`l` window of the prefix.
pub fn prefix_regulator(x: &Sequence, n: usize, horizon: usize) -> Result<usize> {
    if n == 0 {
        return Err(SeqError::InvalidArgument("factor length must be positive".into()));
    }
    if horizon < 4 * n {
        return Err(SeqError::HorizonTooSmall { horizon, need: 4 * n });
    }
    x.with_prefix(horizon, |s| {
        let occ = crate::core::find_all(s, &s[..n]);
        if occ.len() < 2 {
            return Err(SeqError::HorizonTooSmall { horizon, need: horizon.saturating_mul(2) });
        }
        let gap = occ.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0);
        let o = Occ { first: 0, last: *occ.last().unwrap(), gap };
        Ok(window_term(&o, n, horizon))
    })?
}

/// One row of the almost periodicity coefficient estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct ApRow {
    pub n: usize,
    pub r: usize,
    /// `r(n) - n + 1`.
    pub rd: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApReport {
    pub rows: Vec<ApRow>,
    /// `max rd(n) / n`.
    pub max_rd_ratio: f64,
    /// `max r(n) / n`.
    pub max_r_ratio: f64,
    pub horizon: usize,
}

/// Empirical `r(n)` and `rd(n)` for `n = 1..=n_max` with the running ratio maxima.
pub fn ap_coefficient(x: &Sequence, n_max: usize, horizon: usize) -> Result<ApReport> {
    let mut rows = Vec::with_capacity(n_max);
    let (mut max_rd, mut max_r) = (0f64, 0f64);
    for n in 1..=n_max {
        let r = empirical_regulator(x, n, horizon)?.value;
        let rd = r + 1 - n;
        max_rd = max_rd.max(rd as f64 / n as f64);
        max_r = max_r.max(r as f64 / n as f64);
        rows.push(ApRow { n, r, rd });
    }
    Ok(ApReport { rows, max_rd_ratio: max_rd, max_r_ratio: max_r, horizon })
}
