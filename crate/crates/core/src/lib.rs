//! Executable span and polynomial constructions over finite G-sets.
//!
//! The crate works in the category of finite G-sets for a finite group `G`.
//! On top of its pullbacks, coproducts and dependent products it builds:
//!
//! - spans and their composition by pullback ([`span`]),
//! - cocompletions of indexed categories along a class of maps ([`completion`]),
//! - polynomials `X ← A → B → Y` with composition by rewriting ([`poly`]),
//! - Mackey functors (restriction and transfer, [`mackey`]),
//! - Tambara functors (restriction, transfer and norm, [`tambara`]).
//!
//! Every construction comes with a checker that tests the relevant laws on
//! sampled data; [`cli`] bundles those checkers into report suites.

pub mod calib;
pub mod cli;
pub mod completion;
pub mod error;
pub mod finact;
pub mod group;
pub mod json;
pub mod mackey;
pub mod poly;
pub mod report;
pub mod sample;
pub mod span;
pub mod tambara;

pub use error::{Error, Result};
pub use finact::{GMap, GSet, SliceObject};
pub use group::{FiniteGroup, Subgroup};
