//! Almost periodic symbolic sequences.
//!
//! Builders for the standard families (Thue–Morse, Sturmian, block products, schemes,
//! morphic, automatic, Toeplitz, Kolakoski), finite-state transforms with regulator bound
//! propagation, measurements, and a Muller/Büchi acceptance decision for sequences that carry
//! a certified regulator bound.
//!
//! Indexing is 0-based and segments `[i, j]` are inclusive.

pub mod analysis;
pub mod core;
pub mod error;
pub mod generators;
pub mod omega;
pub mod transforms;

pub use crate::core::{Alphabet, BoundFunction, Segment, Sequence, Sym, Word};
pub use crate::error::{Result, SeqError};
