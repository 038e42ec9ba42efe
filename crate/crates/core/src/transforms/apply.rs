use parking_lot::Mutex;

use crate::core::{Oracle, Provenance, Sequence, Sym};
use crate::error::{Result, SeqError};
use crate::generators::Morphism;

struct ImageOracle {
    base: Sequence,
    images: Vec<Vec<Sym>>,
    // (source symbols consumed, output length they produced)
    pos: Mutex<(usize, usize)>,
}

impl Oracle for ImageOracle {
    fn fill(&self, buf: &mut Vec<Sym>, len: usize) -> Result<()> {
        let mut pos = self.pos.lock();
        if pos.1 != buf.len() {
            *pos = (0, 0);
            buf.clear();
        }
        while buf.len() < len {
            let a = self.base.get(pos.0)?;
            buf.extend_from_slice(&self.images[a as usize]);
            pos.0 += 1;
            pos.1 = buf.len();
        }
        Ok(())
    }
}

/// `φ(x) = φ(x(0)) φ(x(1)) ...`. No certified bound is carried over.
pub fn apply_morphism(phi: &Morphism, x: &Sequence) -> Result<Sequence> {
    if phi.source() != x.alphabet() {
        return Err(SeqError::AlphabetMismatch("morphism source differs from the sequence alphabet".into()));
    }
    if phi.images().iter().all(Vec::is_empty) {
        return Err(SeqError::ImageCollapse);
    }
    if let Some(p) = x.period_info() {
        // Every letter of the periodic part erased means a finite image.
        let tail = x.range(p.preperiod, p.preperiod + p.period)?;
        if tail.iter().all(|&a| phi.image(a).is_empty()) {
            return Err(SeqError::ImageCollapse);
        }
    }
    let prov = Provenance::new("apply_morphism").with("phi", phi).with("x", x.provenance());
    let oracle = ImageOracle { base: x.clone(), images: phi.images().to_vec(), pos: Mutex::new((0, 0)) };
    let mut out = Sequence::new(phi.target().clone(), oracle, prov);
    if phi.is_coding() {
        out = out.with_period(x.period_info());
    }
    Ok(out)
}
