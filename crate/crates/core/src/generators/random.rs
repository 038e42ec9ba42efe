use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::core::{Alphabet, Provenance, Sequence, Sym};
use crate::error::{Result, SeqError};
use parking_lot::Mutex;

/// Uniform i.i.d. letters over `{0, ..., k-1}` from a seeded ChaCha stream.
pub fn random_sequence(seed: u64, k: usize) -> Result<Sequence> {
    if k < 2 {
        return Err(SeqError::InvalidArgument("random sequences need k >= 2".into()));
    }
    let state = Mutex::new(ChaCha8Rng::seed_from_u64(seed));
    let oracle = move |buf: &mut Vec<Sym>, len: usize| -> Result<()> {
        // The stream restarts when the buffer is fresh, so `uncached` reproduces the cache.
        let mut rng = state.lock();
        if buf.is_empty() {
            *rng = ChaCha8Rng::seed_from_u64(seed);
        }
        while buf.len() < len {
            buf.push(rng.gen_range(0..k as Sym));
        }
        Ok(())
    };
    let prov = Provenance::new("random").with("seed", seed).with("k", k);
    Ok(Sequence::new(Alphabet::digits(k), oracle, prov))
}
