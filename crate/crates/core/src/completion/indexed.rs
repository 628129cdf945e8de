//! Indexed categories `ℰ^op → Cat` presented by probes, and the shipped
//! instances: the terminal one, slices, and representables `ℰ(−, K)`.

use std::fmt;

use crate::calib::MorphismClass;
use crate::error::{boundary, Result};
use crate::finact::{
    coproduct, delta_mor, equivariant_maps, pullback, slice_iso, sum_map, Coproduct, GMap, GSet,
    SliceMorphism, SliceObject,
};

/// Bound on the number of candidate maps enumerated by hom searches.
pub const HOM_LIMIT: usize = 200_000;

/// A pseudofunctor `X: ℰ^op → Cat`, evaluated lazily on the objects it is given.
///
/// Objects know the G-set they live over. Morphisms run between objects of
/// one fiber; `compose(f, g)` is `f` then `g`.
pub trait IndexedCategory {
    type Obj: Clone + fmt::Debug + PartialEq;
    type Mor: Clone + fmt::Debug + PartialEq;

    fn name(&self) -> String;

    /// The G-set `U` with `x ∈ X(U)`.
    fn base_of(&self, x: &Self::Obj) -> GSet;

    /// `X(f): X(V) → X(S)` for `f: S → V`.
    fn reindex(&self, f: &GMap, x: &Self::Obj) -> Result<Self::Obj>;

    /// `X(f)` on a morphism `m: a → b`.
    fn reindex_mor(&self, f: &GMap, a: &Self::Obj, b: &Self::Obj, m: &Self::Mor) -> Result<Self::Mor>;

    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<Self::Mor>>;

    fn identity(&self, a: &Self::Obj) -> Self::Mor;

    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;

    fn inverse(&self, m: &Self::Mor) -> Option<Self::Mor>;

    fn find_iso(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Option<Self::Mor>>;

    /// The iso `x → X(1) x`.
    fn unit_coherence(&self, x: &Self::Obj) -> Result<Self::Mor>;

    /// The iso `X(f) X(g) x → X(g∘f) x`.
    fn coherence(&self, f: &GMap, g: &GMap, x: &Self::Obj) -> Result<Self::Mor>;

    /// An object over `U+V` restricting to `a` over `U` and `b` over `V`.
    fn glue(&self, base: &Coproduct, a: &Self::Obj, b: &Self::Obj) -> Result<Self::Obj>;

    fn describe(&self, x: &Self::Obj) -> String {
        format!("{x:?}")
    }
}

/// Indexed categories with left adjoints `Σ_r ⊣ X(r)`.
pub trait SumsAlong: IndexedCategory {
    fn sum_along(&self, r: &GMap, x: &Self::Obj) -> Result<Self::Obj>;
}

/// Indexed categories with right adjoints `X(r) ⊣ Π_r`.
pub trait ProductsAlong: IndexedCategory {
    fn product_along(&self, r: &GMap, x: &Self::Obj) -> Result<Self::Obj>;
}

/// The terminal indexed category `1`; its base is recorded with each object.
#[derive(Clone, Copy, Debug, Default)]
pub struct Terminal;

impl IndexedCategory for Terminal {
    type Obj = GSet;
    type Mor = ();

    fn name(&self) -> String {
        "terminal".into()
    }

    fn base_of(&self, x: &GSet) -> GSet {
        x.clone()
    }

    fn reindex(&self, f: &GMap, x: &GSet) -> Result<GSet> {
        if f.cod() != x {
            return Err(boundary("reindexing along a map into another base"));
        }
        Ok(f.dom().clone())
    }

    fn reindex_mor(&self, _: &GMap, _: &GSet, _: &GSet, _: &()) -> Result<()> {
        Ok(())
    }

    fn hom(&self, _: &GSet, _: &GSet) -> Result<Vec<()>> {
        Ok(vec![()])
    }

    fn identity(&self, _: &GSet) {}

    fn compose(&self, _: &(), _: &()) -> Result<()> {
        Ok(())
    }

    fn inverse(&self, _: &()) -> Option<()> {
        Some(())
    }

    fn find_iso(&self, a: &GSet, b: &GSet) -> Result<Option<()>> {
        Ok((a == b).then_some(()))
    }

    fn unit_coherence(&self, _: &GSet) -> Result<()> {
        Ok(())
    }

    fn coherence(&self, _: &GMap, _: &GMap, _: &GSet) -> Result<()> {
        Ok(())
    }

    fn glue(&self, base: &Coproduct, _: &GSet, _: &GSet) -> Result<GSet> {
        Ok(base.sum.clone())
    }

    fn describe(&self, x: &GSet) -> String {
        format!("* over {} points", x.size())
    }
}

/// `X(U)` = objects of the slice over `U` whose map lies in `class`.
#[derive(Clone, Debug)]
pub struct Slice {
    pub class: MorphismClass,
}

impl Slice {
    pub fn new(class: MorphismClass) -> Self {
        Slice { class }
    }

    pub fn all() -> Self {
        Slice::new(MorphismClass::all())
    }
}

impl IndexedCategory for Slice {
    type Obj = SliceObject;
    type Mor = GMap;

    fn name(&self) -> String {
        format!("slice[{}]", self.class.name())
    }

    fn base_of(&self, x: &SliceObject) -> GSet {
        x.base().clone()
    }

    fn reindex(&self, f: &GMap, x: &SliceObject) -> Result<SliceObject> {
        crate::finact::delta(f, x)
    }

    fn reindex_mor(&self, f: &GMap, a: &SliceObject, b: &SliceObject, m: &GMap) -> Result<GMap> {
        let phi = SliceMorphism::new(a.clone(), b.clone(), m.clone())?;
        Ok(delta_mor(f, &phi)?.map)
    }

    fn hom(&self, a: &SliceObject, b: &SliceObject) -> Result<Vec<GMap>> {
        if a.base() != b.base() {
            return Err(boundary("hom between slices over different bases"));
        }
        let (ma, mb) = (a.map(), b.map());
        equivariant_maps(a.total(), b.total(), &|p, q| ma.apply(p) == mb.apply(q), HOM_LIMIT)
    }

    fn identity(&self, a: &SliceObject) -> GMap {
        GMap::identity(a.total())
    }

    fn compose(&self, f: &GMap, g: &GMap) -> Result<GMap> {
        f.then(g)
    }

    fn inverse(&self, m: &GMap) -> Option<GMap> {
        m.inverse()
    }

    fn find_iso(&self, a: &SliceObject, b: &SliceObject) -> Result<Option<GMap>> {
        Ok(slice_iso(a, b))
    }

    fn unit_coherence(&self, x: &SliceObject) -> Result<GMap> {
        let pb = pullback(&GMap::identity(x.base()), x.map())?;
        let table = x
            .total()
            .points()
            .map(|a| pb.index(x.map().apply(a), a).expect("graph point"))
            .collect();
        Ok(GMap::new_unchecked(x.total().clone(), pb.apex.clone(), table))
    }

    fn coherence(&self, f: &GMap, g: &GMap, x: &SliceObject) -> Result<GMap> {
        let inner = pullback(g, x.map())?;
        let outer = pullback(f, &inner.left)?;
        let direct = pullback(&g.compose(f)?, x.map())?;
        let table = outer
            .points()
            .iter()
            .map(|&(s, j)| {
                let (_, a) = inner.point(j);
                direct.index(s, a).expect("matching point")
            })
            .collect();
        Ok(GMap::new_unchecked(outer.apex.clone(), direct.apex.clone(), table))
    }

    fn glue(&self, base: &Coproduct, a: &SliceObject, b: &SliceObject) -> Result<SliceObject> {
        let src = coproduct(a.total(), b.total())?;
        let m = sum_map(a.map(), b.map(), &src, base)?;
        self.class.require(&m)?;
        Ok(SliceObject::new(m))
    }

    fn describe(&self, x: &SliceObject) -> String {
        crate::finact::slice_canonical_form(x)
    }
}

impl SumsAlong for Slice {
    fn sum_along(&self, r: &GMap, x: &SliceObject) -> Result<SliceObject> {
        let s = crate::finact::sigma(r, x)?;
        self.class.require(s.map())?;
        Ok(s)
    }
}

impl ProductsAlong for Slice {
    fn product_along(&self, r: &GMap, x: &SliceObject) -> Result<SliceObject> {
        let p = crate::finact::pi(r, x)?;
        self.class.require(p.map())?;
        Ok(p)
    }
}

/// The representable `ℰ(−, K)`: each `X(U)` is the discrete set of maps `U → K`.
#[derive(Clone, Debug)]
pub struct Representable {
    pub k: GSet,
}

impl Representable {
    pub fn new(k: GSet) -> Self {
        Representable { k }
    }
}

impl IndexedCategory for Representable {
    type Obj = GMap;
    type Mor = ();

    fn name(&self) -> String {
        format!("representable[{} points]", self.k.size())
    }

    fn base_of(&self, x: &GMap) -> GSet {
        x.dom().clone()
    }

    fn reindex(&self, f: &GMap, x: &GMap) -> Result<GMap> {
        x.compose(f)
    }

    fn reindex_mor(&self, _: &GMap, _: &GMap, _: &GMap, _: &()) -> Result<()> {
        Ok(())
    }

    fn hom(&self, a: &GMap, b: &GMap) -> Result<Vec<()>> {
        Ok(if a == b { vec![()] } else { Vec::new() })
    }

    fn identity(&self, _: &GMap) {}

    fn compose(&self, _: &(), _: &()) -> Result<()> {
        Ok(())
    }

    fn inverse(&self, _: &()) -> Option<()> {
        Some(())
    }

    fn find_iso(&self, a: &GMap, b: &GMap) -> Result<Option<()>> {
        Ok((a == b).then_some(()))
    }

    fn unit_coherence(&self, _: &GMap) -> Result<()> {
        Ok(())
    }

    fn coherence(&self, _: &GMap, _: &GMap, _: &GMap) -> Result<()> {
        Ok(())
    }

    fn glue(&self, base: &Coproduct, a: &GMap, b: &GMap) -> Result<GMap> {
        base.copair(a, b)
    }

    fn describe(&self, x: &GMap) -> String {
        format!("{:?}", x.table())
    }
}
