use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finact::GMap;

type Predicate = dyn Fn(&GMap) -> bool + Send + Sync;

/// A class of equivariant maps, given as a decidable predicate.
///
/// `closed_under_coproducts` declares that the class, as a wide subcategory,
/// keeps the coproducts of the base: coprojections, codiagonals, maps out of
/// `0` and sums `f + f'` of members are members.
#[derive(Clone)]
pub struct MorphismClass {
    name: String,
    predicate: Arc<Predicate>,
    closed_under_coproducts: bool,
}

impl fmt::Debug for MorphismClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MorphismClass({})", self.name)
    }
}

impl MorphismClass {
    pub fn new(
        name: impl Into<String>,
        closed_under_coproducts: bool,
        predicate: impl Fn(&GMap) -> bool + Send + Sync + 'static,
    ) -> Self {
        MorphismClass {
            name: name.into(),
            predicate: Arc::new(predicate),
            closed_under_coproducts,
        }
    }

    pub fn all() -> Self {
        Self::new("all", true, |_| true)
    }

    pub fn injective() -> Self {
        Self::new("injective", false, GMap::is_injective)
    }

    pub fn surjective() -> Self {
        Self::new("surjective", false, GMap::is_surjective)
    }

    pub fn isomorphisms() -> Self {
        Self::new("iso", false, GMap::is_iso)
    }

    /// Maps whose image is a single point. Not closed under anything useful;
    /// kept as a negative control for the checkers.
    pub fn constant_image() -> Self {
        Self::new("constant-image", false, |f| f.image_size() == 1)
    }

    /// Exactly the listed maps (compared structurally).
    pub fn whitelist(name: impl Into<String>, maps: Vec<GMap>) -> Self {
        Self::new(name, false, move |f| maps.iter().any(|m| m == f))
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "all" => Ok(Self::all()),
            "injective" | "inj" => Ok(Self::injective()),
            "surjective" | "surj" => Ok(Self::surjective()),
            "iso" | "isomorphisms" => Ok(Self::isomorphisms()),
            "constant-image" => Ok(Self::constant_image()),
            _ => Err(Error::Unsupported(format!("unknown morphism class `{name}`"))),
        }
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &["all", "injective", "surjective", "iso"]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn closed_under_coproducts(&self) -> bool {
        self.closed_under_coproducts
    }

    pub fn contains(&self, f: &GMap) -> bool {
        (self.predicate)(f)
    }

    pub fn require(&self, f: &GMap) -> Result<()> {
        if self.contains(f) {
            Ok(())
        } else {
            Err(Error::ClassViolation {
                class: self.name.clone(),
                detail: format!("{f:?}"),
            })
        }
    }
}
