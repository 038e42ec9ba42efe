use std::collections::BTreeSet;
use std::fmt;

use super::alphabet::Sym;
use super::sequence::{Provenance, Sequence};
use super::word::Word;
use crate::error::{Result, SeqError};

/// Inclusive segment `[i, j]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    i: usize,
    j: usize,
}

impl Segment {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i > j {
            return Err(SeqError::InvalidArgument(format!("segment [{i},{j}] has i > j")));
        }
        Ok(Segment { i, j })
    }

    pub fn start(&self) -> usize {
        self.i
    }

    pub fn end(&self) -> usize {
        self.j
    }

    pub fn len(&self) -> usize {
        self.j - self.i + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.i, self.j)
    }
}

/// `x[0, n-1]`.
pub fn prefix(x: &Sequence, n: usize) -> Result<Word> {
    x.prefix(n)
}

/// `x(i) x(i+1) ... x(j)`.
pub fn segment(x: &Sequence, s: Segment) -> Result<Word> {
    Ok(Word::from_raw(x.alphabet().clone(), x.range(s.i, s.j + 1)?))
}

/// Length-`n` factors of a word.
pub fn word_factors(w: &Word, n: usize) -> BTreeSet<Word> {
    if n == 0 || n > w.len() {
        return BTreeSet::new();
    }
    w.letters().windows(n).map(|f| Word::from_raw(w.alphabet().clone(), f.to_vec())).collect()
}

/// Length-`n` factors of `x[0, horizon)`: a subset of `Fac_n(x)`, equal to it once the horizon
/// passes `certified_bound(n) + n`.
pub fn factors(x: &Sequence, horizon: usize, n: usize) -> Result<BTreeSet<Word>> {
    if n == 0 {
        return Err(SeqError::InvalidArgument("factor length must be positive".into()));
    }
    if horizon < n {
        return Err(SeqError::HorizonTooSmall { horizon, need: n });
    }
    x.with_prefix(horizon, |p| {
        let mut set: BTreeSet<&[Sym]> = BTreeSet::new();
        for f in p.windows(n) {
            set.insert(f);
        }
        set.into_iter().map(|f| Word::from_raw(x.alphabet().clone(), f.to_vec())).collect()
    })
}

/// Start indices of all (possibly overlapping) occurrences of `needle` in `haystack`.
pub fn occurrences(haystack: &Word, needle: &Word) -> Result<Vec<usize>> {
    haystack.check_same(needle)?;
    if needle.is_empty() {
        return Err(SeqError::InvalidArgument("needle must be nonempty".into()));
    }
    Ok(find_all(haystack.letters(), needle.letters()))
}

/// Knuth–Morris–Pratt scan over raw symbols.
pub(crate) fn find_all(hay: &[Sym], pat: &[Sym]) -> Vec<usize> {
    let m = pat.len();
    if m == 0 || m > hay.len() {
        return Vec::new();
    }
    let mut fail = vec![0usize; m];
    let mut k = 0;
    for i in 1..m {
        while k > 0 && pat[i] != pat[k] {
            k = fail[k - 1];
        }
        if pat[i] == pat[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut out = Vec::new();
    k = 0;
    for (i, &c) in hay.iter().enumerate() {
        while k > 0 && c != pat[k] {
            k = fail[k - 1];
        }
        if c == pat[k] {
            k += 1;
        }
        if k == m {
            out.push(i + 1 - m);
            k = fail[k - 1];
        }
    }
    out
}

/// Result of [`agreement_length`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Agreement {
    /// First index where the sequences differ.
    At(usize),
    /// No difference inside the horizon.
    AtLeast(usize),
}

impl fmt::Display for Agreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Agreement::At(n) => write!(f, "{n}"),
            Agreement::AtLeast(h) => write!(f, ">={h}"),
        }
    }
}

/// First disagreement index, so that the Cantor distance is `2^-n`.
pub fn agreement_length(x: &Sequence, y: &Sequence, horizon: usize) -> Result<Agreement> {
    if x.alphabet() != y.alphabet() {
        return Err(SeqError::AlphabetMismatch(format!(
            "{:?} vs {:?}",
            x.alphabet(),
            y.alphabet()
        )));
    }
    let a = x.symbols(horizon)?;
    let b = y.symbols(horizon)?;
    Ok(match a.iter().zip(&b).position(|(p, q)| p != q) {
        Some(i) => Agreement::At(i),
        None => Agreement::AtLeast(horizon),
    })
}

/// `L^n x`. Any certified bound is dropped.
pub fn shift(x: &Sequence, n: usize) -> Sequence {
    if n == 0 {
        return x.with_bound(x.certified_bound().cloned());
    }
    let base = x.clone();
    let oracle = move |buf: &mut Vec<Sym>, len: usize| -> Result<()> {
        let from = buf.len();
        let chunk = base.range(n + from, n + len)?;
        buf.extend_from_slice(&chunk);
        Ok(())
    };
    let prov = Provenance::new("shift").with("base", x.provenance()).with("n", n);
    let period = x.period_info().map(|p| super::sequence::PeriodInfo {
        preperiod: p.preperiod.saturating_sub(n),
        period: p.period,
    });
    Sequence::new(x.alphabet().clone(), oracle, prov).with_period(period)
}
