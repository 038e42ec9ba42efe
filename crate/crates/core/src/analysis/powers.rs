use std::fmt;
use std::str::FromStr;

use crate::core::{Sequence, Sym};
use crate::error::{Result, SeqError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerKind {
    /// `uu`
    Square,
    /// `uuu`
    Cube,
    /// `auaua`
    Overlap,
}

impl PowerKind {
    /// Length of the run of `x(i) = x(i + p)` needed for one occurrence with period `p`.
    fn required(self, p: usize) -> usize {
        match self {
            PowerKind::Square => p,
            PowerKind::Cube => 2 * p,
            PowerKind::Overlap => p + 1,
        }
    }

    /// Length of an occurrence with period `p`.
    pub fn occurrence_len(self, p: usize) -> usize {
        p + self.required(p)
    }
}

impl fmt::Display for PowerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PowerKind::Square => "square",
            PowerKind::Cube => "cube",
            PowerKind::Overlap => "overlap",
        })
    }
}

impl FromStr for PowerKind {
    type Err = SeqError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(PowerKind::Square),
            "cube" => Ok(PowerKind::Cube),
            "overlap" => Ok(PowerKind::Overlap),
            _ => Err(SeqError::InvalidArgument(format!("unknown power kind `{s}`"))),
        }
    }
}

/// Maximal stretch `[start, end)` of positions with `x(i) = x(i + period)`; every occurrence of
/// the requested kind with this period starts in `[start, end - required]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerRun {
    pub start: usize,
    pub end: usize,
    pub period: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerReport {
    pub kind: PowerKind,
    pub runs: Vec<PowerRun>,
    pub horizon: usize,
}

impl PowerReport {
    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Root lengths that occur.
    pub fn periods(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.runs.iter().map(|r| r.period).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// All occurrences `(position, |u|)` with `|u| <= max_root`, ordered by position then length.
    pub fn occurrences(&self, max_root: usize) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for r in self.runs.iter().filter(|r| r.period <= max_root) {
            let req = self.kind.required(r.period);
            for i in r.start..=r.end - req {
                v.push((i, r.period));
            }
        }
        v.sort_unstable();
        v
    }
}

/// Suffix array by prefix doubling.
fn suffix_array(s: &[Sym]) -> Vec<usize> {
    let n = s.len();
    let mut sa: Vec<usize> = (0..n).collect();
    let mut rank: Vec<usize> = s.iter().map(|&a| a as usize).collect();
    let mut tmp = vec![0usize; n];
    if n < 2 {
        return sa;
    }
    let mut k = 1;
    loop {
        let key = |i: usize, rank: &[usize]| (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 });
        sa.sort_unstable_by_key(|&i| key(i, &rank));
        tmp[sa[0]] = 0;
        for w in 1..n {
            tmp[sa[w]] = tmp[sa[w - 1]] + usize::from(key(sa[w - 1], &rank) != key(sa[w], &rank));
        }
        std::mem::swap(&mut rank, &mut tmp);
        if rank[sa[n - 1]] == n - 1 {
            break;
        }
        k *= 2;
    }
    sa
}

/// Longest common extension queries via suffix array, Kasai LCP and a sparse table.
struct Lce {
    rank: Vec<usize>,
    table: Vec<Vec<u32>>,
}

impl Lce {
    fn new(s: &[Sym]) -> Self {
        let n = s.len();
        let sa = suffix_array(s);
        let mut rank = vec![0; n];
        for (i, &p) in sa.iter().enumerate() {
            rank[p] = i;
        }
        let mut lcp = vec![0u32; n];
        let mut h = 0usize;
        for i in 0..n {
            if rank[i] > 0 {
                let j = sa[rank[i] - 1];
                while i + h < n && j + h < n && s[i + h] == s[j + h] {
                    h += 1;
                }
                lcp[rank[i]] = h as u32;
                h = h.saturating_sub(1);
            } else {
                h = 0;
            }
        }
        let mut table = vec![lcp];
        let mut w = 1;
        while 2 * w <= n {
            let prev = table.last().unwrap();
            let next: Vec<u32> = (0..=n - 2 * w).map(|i| prev[i].min(prev[i + w])).collect();
            table.push(next);
            w *= 2;
        }
        Lce { rank, table }
    }

    fn query(&self, i: usize, j: usize) -> usize {
        if i == j {
            return self.rank.len() - i;
        }
        let (a, b) = {
            let (x, y) = (self.rank[i], self.rank[j]);
            if x < y {
                (x + 1, y)
            } else {
                (y + 1, x)
            }
        };
        let lvl = (usize::BITS - 1 - (b - a + 1).leading_zeros()) as usize;
        self.table[lvl][a].min(self.table[lvl][b + 1 - (1 << lvl)]) as usize
    }
}

/// Squares, cubes or overlaps in `x[0, horizon)`, reported as maximal runs per period.
pub fn detect_powers(x: &Sequence, horizon: usize, kind: PowerKind) -> Result<PowerReport> {
    detect_powers_upto(x, horizon, kind, usize::MAX)
}

/// As [`detect_powers`], restricted to roots of length at most `max_root`.
pub fn detect_powers_upto(x: &Sequence, horizon: usize, kind: PowerKind, max_root: usize) -> Result<PowerReport> {
    if horizon < 4 {
        return Err(SeqError::HorizonTooSmall { horizon, need: 4 });
    }
    let s = x.symbols(horizon)?;
    let n = s.len();
    let fwd = Lce::new(&s);
    let rev: Vec<Sym> = s.iter().rev().copied().collect();
    let bwd = Lce::new(&rev);
    let mut runs = Vec::new();
    let mut p = 1;
    while kind.occurrence_len(p) <= n && p <= max_root {
        let req = kind.required(p);
        let mut covered = 0;
        let mut j = 0;
        while j + p < n {
            if j >= covered {
                let ahead = fwd.query(j, j + p).min(n - j - p);
                let back = if j == 0 { 0 } else { bwd.query(n - j, n - j - p).min(j) };
                let start = j - back;
                let end = j + ahead;
                if end - start >= req && start >= covered {
                    runs.push(PowerRun { start, end, period: p });
                }
                covered = covered.max(end);
            }
            j += p;
        }
        p += 1;
    }
    Ok(PowerReport { kind, runs, horizon })
}
