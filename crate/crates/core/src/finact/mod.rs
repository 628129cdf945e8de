//! Finite G-sets and equivariant maps: the base category, its limits and
//! colimits, slices, and the adjoint string `Σ ⊣ Δ ⊣ Π`.

mod gset;
pub mod iso;
pub mod lext;
pub mod limits;
pub mod slice;

pub use gset::{GMap, GSet};
pub(crate) use gset::position_map;
pub use iso::{
    automorphisms, canonical_form, equivariant_maps, find_iso_labelled, iso_gsets, orbit_types,
    realize_types, render_types, slice_canonical_form, slice_iso, OrbitType,
};
pub use lext::{coproduct_pullback_decompose, lextensive_factor, CoproductPullbacks, LextTriangle};
pub use limits::{
    codiagonal, coproduct, initial, is_pullback_square, product, product_map, pullback,
    pullback_with_limit, sum_map, terminal, Coproduct, Product, Pullback, Summand,
    DEFAULT_MAX_POINTS,
};
pub use slice::{
    check_adjunction_triangles, counit_e, counit_e_with_limit, delta, delta_mor, pi, pi_full,
    pi_mor, pi_with_limit, sigma, sigma_mor, DependentProduct, Evaluation, SliceMorphism,
    SliceObject, TriangleOutcome,
};
