use std::fmt;

use crate::core::{Oracle, Provenance, Sequence, Sym};
use crate::error::{Result, SeqError};

/// A strictly increasing divisor chain `n_0 | n_1 | n_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Levels {
    /// Finitely many levels; positions past the last level are never rewritten by later steps.
    Listed(Vec<usize>),
    /// `n_k = first * ratio^k`.
    Geometric { first: usize, ratio: usize },
}

impl Levels {
    pub fn validate(&self) -> Result<()> {
        match self {
            Levels::Listed(v) => {
                if v.is_empty() || v[0] == 0 {
                    return Err(SeqError::InvalidArgument("levels must start with a positive length".into()));
                }
                for w in v.windows(2) {
                    if w[1] <= w[0] || w[1] % w[0] != 0 {
                        return Err(SeqError::InvalidArgument(format!(
                            "divisor chain violated at {} -> {}",
                            w[0], w[1]
                        )));
                    }
                }
            }
            Levels::Geometric { first, ratio } => {
                if *first == 0 || *ratio < 2 {
                    return Err(SeqError::InvalidArgument("geometric levels need first >= 1, ratio >= 2".into()));
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, k: usize) -> Option<usize> {
        match self {
            Levels::Listed(v) => v.get(k).copied(),
            Levels::Geometric { first, ratio } => {
                ratio.checked_pow(k as u32).and_then(|r| r.checked_mul(*first))
            }
        }
    }
}

impl fmt::Display for Levels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Levels::Listed(v) => {
                let s: Vec<String> = v.iter().map(usize::to_string).collect();
                f.write_str(&s.join(","))
            }
            Levels::Geometric { first, ratio } => write!(f, "{first}x{ratio}"),
        }
    }
}

impl std::str::FromStr for Levels {
    type Err = SeqError;

    /// `a,b,c` (listed) or `FIRSTxRATIO` (geometric).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || SeqError::InvalidArgument(format!("cannot read levels `{s}`"));
        let l = if let Some((a, r)) = s.split_once('x') {
            Levels::Geometric {
                first: a.trim().parse().map_err(|_| bad())?,
                ratio: r.trim().parse().map_err(|_| bad())?,
            }
        } else {
            Levels::Listed(
                s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?,
            )
        };
        l.validate()?;
        Ok(l)
    }
}

/// Where the final symbol at `t` comes from: the base sequence at a smaller index, or a
/// copy of an earlier position made by step `k`.
pub fn resolve_index(levels: &Levels, mut t: usize) -> (usize, usize) {
    let mut copies = 0;
    loop {
        // Last step k that covers t: largest k with n_{k+1} <= t and t mod n_{k+1} < n_k.
        let mut hit = None;
        let mut k = 0;
        while let (Some(nk), Some(nk1)) = (levels.get(k), levels.get(k + 1)) {
            if nk1 > t {
                break;
            }
            if t % nk1 < nk {
                hit = Some(nk1);
            }
            k += 1;
        }
        match hit {
            Some(nk1) => {
                t %= nk1;
                copies += 1;
            }
            None => return (t, copies),
        }
    }
}

struct ProgressionOracle {
    base: Sequence,
    levels: Levels,
}

impl Oracle for ProgressionOracle {
    fn fill(&self, buf: &mut Vec<Sym>, len: usize) -> Result<()> {
        for t in buf.len()..len {
            let (src, _) = resolve_index(&self.levels, t);
            let s = if src < buf.len() { buf[src] } else { self.base.get(src)? };
            buf.push(s);
        }
        Ok(())
    }
}

/// At step `k`, every `x[i n_{k+1}, i n_{k+1} + n_k - 1]` with `i >= 1` is overwritten with the
/// current `x[0, n_k - 1]`.
///
/// No certified regulator bound is attached; [`progression_prefix_bound`] bounds the prefix
/// regulator only.
pub fn progression_rewrite(base: &Sequence, levels: Levels) -> Result<Sequence> {
    levels.validate()?;
    let prov = Provenance::new("progression_rewrite").with("base", base.provenance()).with("levels", &levels);
    Ok(Sequence::new(base.alphabet().clone(), ProgressionOracle { base: base.clone(), levels }, prov))
}

/// `2 n_{k+1}` for the least `k` with `n_k >= n`: the prefix `x[0, n-1]` recurs along the
/// progression `i n_{k+1}`.
pub fn progression_prefix_bound(levels: &Levels, n: usize) -> Option<u64> {
    let mut k = 0;
    loop {
        let nk = levels.get(k)?;
        if nk >= n {
            return levels.get(k + 1).and_then(|v| (v as u64).checked_mul(2));
        }
        k += 1;
    }
}
