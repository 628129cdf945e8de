//! Cocompletions and completions of indexed categories along a class of
//! maps, with their units, multiplication and law checks.

pub mod checks;
mod cocompletion;
mod dual;
mod indexed;

pub use checks::{
    check_biproduct_preservation, check_cb, check_local_sum, check_monad_laws, check_naturality,
    check_span_functor, check_span_iso_invariance, check_sum_cb, check_unit_left_adjoint,
    extend_to_spans, hom_bijection, HomBijection,
};
pub use cocompletion::{Completion, CompletionMorphism, CompletionObject};
pub use dual::{check_product_cb, product_from_family, DualCompletion, DualMorphism};
pub use indexed::{
    IndexedCategory, ProductsAlong, Representable, Slice, SumsAlong, Terminal, HOM_LIMIT,
};
#[cfg(test)]
mod tests;
