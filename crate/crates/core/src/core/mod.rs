//! Alphabets, words, lazily memoized sequences and segment primitives.

mod alphabet;
mod bound;
mod ops;
mod sequence;
mod word;

pub use alphabet::{Alphabet, Sym};
pub use bound::BoundFunction;
pub use ops::{
    agreement_length, factors, occurrences, prefix, segment, shift, word_factors, Agreement,
    Segment,
};
pub(crate) use ops::find_all;
pub use sequence::{
    horizon_cap, IndexOracle, Oracle, PeriodInfo, Provenance, Sequence, DEFAULT_HORIZON_CAP,
    HORIZON_ENV,
};
pub(crate) use sequence::check_cap;
pub use word::Word;
