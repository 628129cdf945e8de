//! Morphism classes, protocalibration and compatible-pair checks, and
//! groupoid fibrations of finite categories.

mod class;
pub mod fibration;
pub mod protocalib;

pub use class::MorphismClass;
pub use fibration::{
    is_cartesian, is_groupoid_fibration, is_groupoid_opfibration, FiniteCategory, FunctorData,
};
pub use protocalib::{
    check_compatible_pair, check_coproduct_closure, check_product_closure, check_protocalibration,
    extensivity_comparison, inverse_sum,
};
