//! Polynomials `X ← A → B → Y` with `n ∈ ℒ` and `t ∈ ℛ`: composition by
//! rewriting `Δ`/`Π`/`Σ` words, the distributive law, the span-of-spans
//! picture, and semiring evaluation over the trivial group.

mod polynomial;
mod rewrite;
mod semiring;

pub use polynomial::{
    check_cell_correspondence, enumerate_poly_morphisms, enumerate_spanspan_2cells, morphism_pullback,
    poly_iso, poly_to_spanspan, spanspan_to_poly, translate_2cell, untranslate_2cell, CellCorrespondence,
    PolyIso, PolyMorphism, Polynomial, SpanOfSpans, SpanSpan2Cell,
};
pub use rewrite::{
    check_distributive_law, compose_poly, distribute, normalize, Distribution, Gen, PolyComposite, PolyExpr, RewriteStep,
    DEFAULT_STEP_CAP,
};
pub use semiring::{check_poly_oracle, eval_semiring, Booleans, Naturals, Semiring};

/// `r | n | t` as tables.
pub fn describe(p: &Polynomial) -> String {
    format!("r={:?} n={:?} t={:?}", p.r().table(), p.n().table(), p.t().table())
}

#[cfg(test)]
mod tests;
