use crate::core::{find_all, Sequence, Word};
use crate::error::{Result, SeqError};

/// `u` occurs at `a + i d` for every `i` with the occurrence inside the inspected prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProgressionWitness {
    pub a: usize,
    pub d: usize,
    pub terms: usize,
}

/// Searches `x[0, horizon)` for an arithmetic progression of occurrences of `u` with at least
/// `min_terms` terms that runs to the end of the prefix. Smallest `d`, then smallest `a`.
pub fn progression_witness(x: &Sequence, u: &Word, horizon: usize, min_terms: usize) -> Result<Option<ProgressionWitness>> {
    if u.is_empty() || min_terms < 2 {
        return Err(SeqError::InvalidArgument("need a nonempty block and at least two terms".into()));
    }
    if u.alphabet() != x.alphabet() {
        return Err(SeqError::AlphabetMismatch("block is over a different alphabet".into()));
    }
    x.with_prefix(horizon, |s| {
        let occ = find_all(s, u.letters());
        let mut hit = vec![false; s.len()];
        for &i in &occ {
            hit[i] = true;
        }
        let last = s.len().saturating_sub(u.len());
        let max_d = last / (min_terms - 1);
        for d in 1..=max_d {
            for &a in occ.iter().take_while(|&&a| a + (min_terms - 1) * d <= last) {
                if a >= d {
                    // A progression starting earlier would already have been found.
                    if hit[a - d] {
                        continue;
                    }
                }
                if (a..=last).step_by(d).all(|p| hit[p]) {
                    let terms = (last - a) / d + 1;
                    return Some(ProgressionWitness { a, d, terms });
                }
            }
        }
        None
    })
}
