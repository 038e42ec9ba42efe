//! Sequence families.

mod automatic;
mod block_product;
mod kolakoski;
mod mechanical;
mod morphic;
mod morphism;
mod periodic;
mod progression;
mod random;
mod scheme;
mod thue_morse;
mod toeplitz;

pub use automatic::{automatic, Dfao};
pub use block_product::{
    alternating_prefix_blocks, alternating_prefix_example, block_product_seq, block_product_word,
    keane, BlockStream,
};
pub use kolakoski::{alternating_morphic, kolakoski, kolakoski_alphabet, AlternatingMorphismSystem};
pub use mechanical::{mechanical, mechanical_with_budget, ContinuedFraction, Real, Variant, REFINEMENT_BUDGET};
pub use morphic::{aperiodicity_witness, fibonacci, morphic, witness_morphism};
pub use morphism::Morphism;
pub use periodic::{constant, counter, eventually_periodic, periodic};
pub use progression::{progression_prefix_bound, progression_rewrite, resolve_index, Levels};
pub use random::random_sequence;
pub use scheme::{
    parse_scheme, scheme_generate, scheme_validate, Level, LevelSource, ListedScheme, Mode, Policy,
    Scheme, SubstitutiveScheme, ValidationReport, Violation,
};
pub use thue_morse::{thue_morse, thue_morse_bound, TmDefinition};
pub use toeplitz::{toeplitz, ToeplitzPattern, HOLES};
