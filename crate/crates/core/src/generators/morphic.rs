use parking_lot::Mutex;

use super::morphism::Morphism;
use crate::core::{Alphabet, Oracle, Provenance, Sequence, Sym};
use crate::error::{Result, SeqError};

/// Fixed point of a (possibly position-alternating) morphism system, followed by a coding.
///
/// Position `j` of the growing word is rewritten by `h[j mod p]`.
pub(crate) struct FixedPointOracle {
    images: Vec<Vec<Vec<Sym>>>,
    coding: Option<Vec<Sym>>,
    state: Mutex<(Vec<Sym>, usize)>,
}

impl FixedPointOracle {
    pub(crate) fn new(images: Vec<Vec<Vec<Sym>>>, seed: Sym, coding: Option<Vec<Sym>>) -> Self {
        FixedPointOracle { images, coding, state: Mutex::new((vec![seed], 0)) }
    }
}

impl Oracle for FixedPointOracle {
    fn fill(&self, buf: &mut Vec<Sym>, len: usize) -> Result<()> {
        let mut st = self.state.lock();
        let (raw, j) = &mut *st;
        let p = self.images.len();
        while raw.len() < len {
            if *j >= raw.len() {
                return Err(SeqError::ImageCollapse);
            }
            let img = &self.images[*j % p][raw[*j] as usize];
            if *j == 0 {
                raw.extend_from_slice(&img[1..]);
            } else {
                raw.extend_from_slice(img);
            }
            *j += 1;
        }
        let from = buf.len();
        match &self.coding {
            Some(c) => buf.extend(raw[from..len].iter().map(|&s| c[s as usize])),
            None => buf.extend_from_slice(&raw[from..len]),
        }
        Ok(())
    }
}

/// Checks `h(s) = s u` and that `u` does not die out under iteration.
pub(crate) fn check_prolongable(h: &Morphism, seed: Sym) -> Result<()> {
    let img = h.image(seed);
    if img.first() != Some(&seed) {
        return Err(SeqError::NonProlongable(format!(
            "image of `{}` does not start with it",
            h.source().name(seed)
        )));
    }
    let mortal = h.mortal_letters();
    if img[1..].iter().all(|s| mortal.contains(s)) {
        return Err(SeqError::ImageCollapse);
    }
    Ok(())
}

/// `coding(φ^∞(seed))`.
pub fn morphic(phi: &Morphism, seed: Sym, coding: Option<&Morphism>) -> Result<Sequence> {
    if !phi.is_endomorphism() {
        return Err(SeqError::InvalidArgument("morphism must map an alphabet to itself".into()));
    }
    if !phi.source().contains(seed) {
        return Err(SeqError::UnknownSymbol(format!("seed #{seed}")));
    }
    check_prolongable(phi, seed)?;
    let (alphabet, code) = match coding {
        None => (phi.source().clone(), None),
        Some(c) => {
            if !c.is_coding() || c.source() != phi.source() {
                return Err(SeqError::InvalidArgument("coding must be 1-uniform on the morphism's alphabet".into()));
            }
            (c.target().clone(), Some(c.images().iter().map(|i| i[0]).collect()))
        }
    };
    let mut prov = Provenance::new("morphic").with("phi", phi).with("seed", phi.source().name(seed));
    if let Some(c) = coding {
        prov = prov.with("coding", c);
    }
    let oracle = FixedPointOracle::new(vec![phi.images().to_vec()], seed, code);
    Ok(Sequence::new(alphabet, oracle, prov))
}

/// Fixed point of `0 -> 01, 1 -> 0`.
pub fn fibonacci() -> Sequence {
    let a = Alphabet::binary();
    let phi = Morphism::endo(&a, &["01", "0"]).expect("valid morphism");
    morphic(&phi, 0, None).expect("prolongable").with_provenance(Provenance::new("fibonacci"))
}

/// `φ(i)(j) = i + (1 + 2 + ... + j) mod k` over `{0, ..., k-1}`.
pub fn witness_morphism(k: usize) -> Result<Morphism> {
    if k < 3 {
        return Err(SeqError::InvalidArgument("aperiodicity witness needs k >= 3".into()));
    }
    let a = Alphabet::digits(k);
    let images = (0..k)
        .map(|i| (0..k).map(|j| ((i + j * (j + 1) / 2) % k) as Sym).collect())
        .collect();
    Morphism::new(a.clone(), a, images)
}

/// `x_k = φ^∞(0)` for [`witness_morphism`].
pub fn aperiodicity_witness(k: usize) -> Result<Sequence> {
    let phi = witness_morphism(k)?;
    Ok(morphic(&phi, 0, None)?.with_provenance(Provenance::new("aperiodicity_witness").with("k", k)))
}
