use std::collections::BTreeMap;

use super::apply::apply_morphism;
use super::bounds::image_bound;
use crate::core::{find_all, Alphabet, Oracle, PeriodInfo, Provenance, Sequence, Sym, Word};
use crate::error::{Result, SeqError};
use crate::generators::{counter, Morphism};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

struct PairOracle {
    x: Sequence,
    y: Sequence,
    ny: usize,
}

impl Oracle for PairOracle {
    fn fill(&self, buf: &mut Vec<Sym>, len: usize) -> Result<()> {
        let from = buf.len();
        let a = self.x.range(from, len)?;
        let b = self.y.range(from, len)?;
        buf.extend(a.iter().zip(&b).map(|(&a, &b)| a * self.ny as Sym + b));
        Ok(())
    }
}

/// `(x × y)(i) = ⟨x(i), y(i)⟩` over names `a:b`.
///
/// When `y` is purely periodic with period `p` and `x` carries a bound `g`, the product carries
/// the uniform transducer bound with `p` states.
pub fn product(x: &Sequence, y: &Sequence) -> Sequence {
    let alphabet = x.alphabet().product(y.alphabet());
    let bound = match (x.certified_bound(), y.period_info(), y.certified_bound()) {
        (Some(g), Some(p), _) if p.preperiod == 0 => Some(image_bound(g, p.period)),
        (_, _, Some(g)) if x.period_info().is_some_and(|p| p.preperiod == 0) => {
            Some(image_bound(g, x.period_info().unwrap().period))
        }
        _ => None,
    };
    let period = match (x.period_info(), y.period_info()) {
        (Some(a), Some(b)) => Some(PeriodInfo {
            preperiod: a.preperiod.max(b.preperiod),
            period: a.period / gcd(a.period, b.period) * b.period,
        }),
        _ => None,
    };
    let prov = Provenance::new("product").with("x", x.provenance()).with("y", y.provenance());
    let oracle = PairOracle { x: x.clone(), y: y.clone(), ny: y.alphabet().len() };
    Sequence::new(alphabet, oracle, prov).with_bound(bound).with_period(period)
}

/// `x × C_m` with `C_m = 0 1 ... (m-1) 0 1 ...`.
pub fn cyclic(x: &Sequence, m: usize) -> Result<Sequence> {
    Ok(product(x, &counter(m)?).with_provenance(Provenance::new("cyclic").with("m", m).with("x", x.provenance())))
}

/// An `a`-splitting: the sequence of blocks `u a` (with `u` free of `a`) after the first one.
#[derive(Clone, Debug)]
pub struct Split {
    /// Block sequence over the discovered block alphabet.
    pub blocks: Sequence,
    /// The dropped first block, ending in the first `a`.
    pub first: Word,
    /// Decoding of each block symbol.
    pub decode: Morphism,
}

/// Cuts `x` after every occurrence of `a` within `x[0, horizon)`. Blocks are named by their
/// rendering; asking for blocks past the horizon raises `HorizonExhausted`.
pub fn split(x: &Sequence, a: Sym, horizon: usize) -> Result<Split> {
    if !x.alphabet().contains(a) {
        return Err(SeqError::UnknownSymbol(format!("letter #{a}")));
    }
    let pre = x.symbols(horizon)?;
    let cuts = find_all(&pre, &[a]);
    if cuts.len() < 2 {
        return Err(SeqError::HorizonTooSmall { horizon, need: horizon.saturating_mul(2).max(1) });
    }
    let first = Word::new(x.alphabet().clone(), pre[..=cuts[0]].to_vec())?;
    let mut names: BTreeMap<Vec<Sym>, ()> = BTreeMap::new();
    let mut raw = Vec::with_capacity(cuts.len() - 1);
    for w in cuts.windows(2) {
        let b = pre[w[0] + 1..=w[1]].to_vec();
        names.insert(b.clone(), ());
        raw.push(b);
    }
    let words: Vec<Vec<Sym>> = names.into_keys().collect();
    let alphabet = Alphabet::new(words.iter().map(|w| x.alphabet().render(w)))?;
    let index = |b: &Vec<Sym>| words.binary_search(b).unwrap() as Sym;
    let stream: Vec<Sym> = raw.iter().map(index).collect();
    let decode = Morphism::new(alphabet.clone(), x.alphabet().clone(), words.clone())?;
    let count = stream.len();
    let oracle = move |buf: &mut Vec<Sym>, len: usize| -> Result<()> {
        if len > count {
            if buf.len() < count {
                buf.extend_from_slice(&stream[buf.len()..]);
            }
            return Err(SeqError::HorizonExhausted { requested: len, cap: count });
        }
        buf.extend_from_slice(&stream[buf.len()..len]);
        Ok(())
    };
    let prov = Provenance::new("split").with("a", x.alphabet().name(a)).with("x", x.provenance());
    Ok(Split { blocks: Sequence::new(alphabet, oracle, prov), first, decode })
}

/// Concatenates the decoded blocks, reproducing `x` from position `|first|` onward.
pub fn unsplit(s: &Split) -> Result<Sequence> {
    apply_morphism(&s.decode, &s.blocks)
}
