//! Morphism application, finite-state and pushdown transduction, products and splittings.

mod apply;
mod bounds;
mod product;
mod pushdown;
mod transducer;

pub use apply::apply_morphism;
pub use bounds::{bound_formulas, image_bound, linear_bound, prefix_bound, reversible_bound, BoundFormulas};
pub use product::{cyclic, product, split, unsplit, Split};
pub use pushdown::{pushdown_transduce, PushdownRule, PushdownTransducer, StackAction, Top};
pub use transducer::{
    decompose, is_almost_reversible, is_reversible, run_states, transduce, transduce_with_states,
    Transducer,
};
