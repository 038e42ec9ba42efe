use super::morphic::{check_prolongable, FixedPointOracle};
use super::morphism::Morphism;
use crate::core::{Alphabet, Provenance, Sequence, Sym, Word};
use crate::error::{Result, SeqError};

/// Alphabet `{1, 2}`; symbol 0 is named `1` and symbol 1 is named `2`.
pub fn kolakoski_alphabet() -> Alphabet {
    Alphabet::new(["1", "2"]).unwrap()
}

/// The self-describing run-length sequence `2, 2, 1, 1, 2, 1, ...`.
pub fn kolakoski() -> Sequence {
    let oracle = |buf: &mut Vec<Sym>, len: usize| -> Result<()> {
        // Runs are re-derived from the prefix: run r has length value(buf[r]).
        let mut v: Vec<Sym> = vec![1, 1];
        let mut r = 1;
        while v.len() < len {
            let next = 1 - v[v.len() - 1];
            let count = v[r] as usize + 1;
            for _ in 0..count {
                v.push(next);
            }
            r += 1;
        }
        buf.clear();
        buf.extend_from_slice(&v);
        Ok(())
    };
    Sequence::new(kolakoski_alphabet(), oracle, Provenance::new("kolakoski"))
}

/// Morphisms `h_0, ..., h_{p-1}` applied by position, with a seed letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingMorphismSystem {
    morphisms: Vec<Morphism>,
    seed: Sym,
}

impl AlternatingMorphismSystem {
    pub fn new(morphisms: Vec<Morphism>, seed: Sym) -> Result<Self> {
        let first = morphisms
            .first()
            .ok_or_else(|| SeqError::InvalidArgument("need at least one morphism".into()))?;
        for h in &morphisms {
            if !h.is_endomorphism() || h.source() != first.source() {
                return Err(SeqError::InvalidArgument("morphisms must share one alphabet".into()));
            }
            if h.is_erasing() {
                return Err(SeqError::InvalidArgument("morphisms must be nonerasing".into()));
            }
        }
        if !first.source().contains(seed) {
            return Err(SeqError::UnknownSymbol(format!("seed #{seed}")));
        }
        check_prolongable(first, seed)?;
        Ok(AlternatingMorphismSystem { morphisms, seed })
    }

    /// `h_0: 1->2, 2->22`, `h_1: 1->1, 2->11`, seed `2`.
    pub fn kolakoski() -> Self {
        let a = kolakoski_alphabet();
        let h0 = Morphism::endo(&a, &["2", "22"]).unwrap();
        let h1 = Morphism::endo(&a, &["1", "11"]).unwrap();
        AlternatingMorphismSystem::new(vec![h0, h1], 1).unwrap()
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.morphisms[0].source()
    }

    pub fn seed(&self) -> Sym {
        self.seed
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    /// `H(a_0 ... a_n) = h_0(a_0) h_1(a_1) ... h_{n mod p}(a_n)`.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.alphabet() != self.alphabet() {
            return Err(SeqError::AlphabetMismatch("word is not over the system alphabet".into()));
        }
        let p = self.morphisms.len();
        let mut out = Vec::new();
        for (i, &a) in w.letters().iter().enumerate() {
            out.extend_from_slice(self.morphisms[i % p].image(a));
        }
        Word::new(self.alphabet().clone(), out)
    }
}

/// `H^∞(s)`.
pub fn alternating_morphic(system: &AlternatingMorphismSystem) -> Sequence {
    let images = system.morphisms.iter().map(|h| h.images().to_vec()).collect();
    let hs: Vec<String> = system.morphisms.iter().map(|h| h.to_string()).collect();
    let prov = Provenance::new("alternating_morphic")
        .with("morphisms", hs.join("|"))
        .with("seed", system.alphabet().name(system.seed));
    Sequence::new(system.alphabet().clone(), FixedPointOracle::new(images, system.seed, None), prov)
}
