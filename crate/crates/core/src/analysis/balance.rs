use crate::core::{Sequence, Word};
use crate::error::{Result, SeqError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceViolation {
    pub n: usize,
    /// Factor with the fewest ones.
    pub light: Word,
    /// Factor with the most ones.
    pub heavy: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceReport {
    pub balanced: bool,
    pub violation: Option<BalanceViolation>,
    pub n_max: usize,
    pub horizon: usize,
}

/// Checks `||u|_1 - |v|_1| <= 1` for all factor pairs of each length `n <= n_max` in the prefix.
pub fn is_balanced(x: &Sequence, n_max: usize, horizon: usize) -> Result<BalanceReport> {
    if x.alphabet().len() != 2 {
        return Err(SeqError::AlphabetMismatch("balance is defined for binary sequences".into()));
    }
    if horizon < n_max {
        return Err(SeqError::HorizonTooSmall { horizon, need: n_max });
    }
    let s = x.symbols(horizon)?;
    let mut ones = vec![0usize; s.len() + 1];
    for (i, &a) in s.iter().enumerate() {
        ones[i + 1] = ones[i] + a as usize;
    }
    for n in 1..=n_max {
        let (mut lo, mut hi) = ((usize::MAX, 0), (0, 0));
        for i in 0..=s.len() - n {
            let c = ones[i + n] - ones[i];
            if c < lo.0 {
                lo = (c, i);
            }
            if c > hi.0 || i == 0 {
                hi = (c, i);
            }
        }
        if hi.0 - lo.0 > 1 {
            let w = |i: usize| Word::new(x.alphabet().clone(), s[i..i + n].to_vec()).unwrap();
            return Ok(BalanceReport {
                balanced: false,
                violation: Some(BalanceViolation { n, light: w(lo.1), heavy: w(hi.1) }),
                n_max,
                horizon,
            });
        }
    }
    Ok(BalanceReport { balanced: true, violation: None, n_max, horizon })
}
