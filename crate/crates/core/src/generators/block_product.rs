use crate::core::{Alphabet, BoundFunction, IndexOracle, Provenance, Sequence, Sym, Word};
use crate::error::{Result, SeqError};

fn check_binary(w: &Word) -> Result<()> {
    if !w.alphabet().is_binary() {
        return Err(SeqError::AlphabetMismatch("block products need the alphabet {0,1}".into()));
    }
    Ok(())
}

/// `u ⊗ v`: `u ⊗ Λ = Λ`, `u ⊗ v0 = (u ⊗ v) u`, `u ⊗ v1 = (u ⊗ v) ū`.
pub fn block_product_word(u: &Word, v: &Word) -> Result<Word> {
    check_binary(u)?;
    check_binary(v)?;
    let mut out = Vec::with_capacity(u.len() * v.len());
    for &b in v.letters() {
        out.extend(u.letters().iter().map(|&s| s ^ b));
    }
    Word::new(Alphabet::binary(), out)
}

/// The blocks `u_0, u_1, ...`: a first block followed by a list repeated forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStream {
    pub first: Word,
    pub cycle: Vec<Word>,
}

impl BlockStream {
    pub fn new(first: Word, cycle: Vec<Word>) -> Result<Self> {
        check_binary(&first)?;
        if first.is_empty() || cycle.is_empty() {
            return Err(SeqError::InvalidArgument("blocks must be nonempty".into()));
        }
        for w in &cycle {
            check_binary(w)?;
            if w.get(0) != Some(0) {
                return Err(SeqError::InvalidArgument(format!("block {w} must start with 0")));
            }
            if w.len() < 2 {
                return Err(SeqError::InvalidArgument(format!("block {w} must have length at least 2")));
            }
        }
        Ok(BlockStream { first, cycle })
    }

    pub fn block(&self, k: usize) -> &Word {
        if k == 0 {
            &self.first
        } else {
            &self.cycle[(k - 1) % self.cycle.len()]
        }
    }

    /// `l_m = |u_0| |u_1| ... |u_m|`, saturating.
    pub fn level_len(&self, m: usize) -> u64 {
        (0..=m).fold(1u64, |acc, k| acc.saturating_mul(self.block(k).len() as u64))
    }

    /// `⊗_{k=0}^{m} u_k`.
    pub fn level_word(&self, m: usize) -> Result<Word> {
        let mut w = self.first.clone();
        for k in 1..=m {
            w = block_product_word(&w, self.block(k))?;
        }
        Ok(w)
    }
}

/// `x(i)` is the XOR of `u_k[d_k]` over the mixed-radix digits of `i`.
fn eval(blocks: &BlockStream, mut i: usize) -> Sym {
    let mut acc = 0;
    let mut k = 0;
    loop {
        let u = blocks.block(k);
        acc ^= u.letters()[i % u.len()];
        i /= u.len();
        if i == 0 {
            return acc;
        }
        k += 1;
    }
}

fn has_both_letters(w: &Word) -> bool {
    w.count(0) > 0 && w.count(1) > 0
}

fn has_repeat_or_ends_in_one(w: &Word) -> bool {
    w.letters().windows(2).any(|p| p[0] == p[1]) || w.letters().last() == Some(&1)
}

/// `2 l_{m+3+j}` with `m` least such that `l_m >= n`, and `j >= 0` least such that
/// `u_{m+1+j}` contains `00`, `11` or ends in `1` (`j = 0` when no block does).
fn block_product_bound(blocks: &BlockStream) -> BoundFunction {
    let b = blocks.clone();
    BoundFunction::new("2*l_(m+3+j)", move |n| {
        let mut m = 0;
        while b.level_len(m) < n {
            m += 1;
        }
        let c = b.cycle.len();
        let j = (0..c).find(|&j| has_repeat_or_ends_in_one(b.block(m + 1 + j))).unwrap_or(0);
        let l = b.level_len(m + 3 + j);
        if l == u64::MAX {
            None
        } else {
            l.checked_mul(2)
        }
    })
}

/// `lim ⊗_{k=0}^{n} u_k`. A certified bound is attached when every `u_k` with `k >= 1` contains
/// both letters.
pub fn block_product_seq(blocks: BlockStream) -> Sequence {
    let bound = blocks.cycle.iter().all(has_both_letters).then(|| block_product_bound(&blocks));
    let cyc: Vec<String> = blocks.cycle.iter().map(|w| w.to_string()).collect();
    let prov = Provenance::new("block_product").with("first", &blocks.first).with("cycle", cyc.join(";"));
    let b = blocks.clone();
    Sequence::new(Alphabet::binary(), IndexOracle(move |i: usize| Ok(eval(&b, i))), prov).with_bound(bound)
}

/// Keane's sequence `001 ⊗ 001 ⊗ ...`.
pub fn keane() -> Sequence {
    let w = Word::binary("001").unwrap();
    block_product_seq(BlockStream::new(w.clone(), vec![w]).unwrap()).with_provenance(Provenance::new("keane"))
}

/// `001 ⊗ 0111 ⊗ 0111 ⊗ ...`.
pub fn alternating_prefix_example() -> Sequence {
    block_product_seq(alternating_prefix_blocks()).with_provenance(Provenance::new("alternating_prefix"))
}

pub fn alternating_prefix_blocks() -> BlockStream {
    BlockStream::new(Word::binary("001").unwrap(), vec![Word::binary("0111").unwrap()]).unwrap()
}
