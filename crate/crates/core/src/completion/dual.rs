//! The ℒ-completion: the same families `(u, x)` with `u ∈ ℒ`, but morphisms
//! `(w, ζ): (u, x) → (u', x')` run `w: S' → S` over `U` with `ζ: X(w) x → x'`.

use super::cocompletion::CompletionObject;
use super::indexed::{IndexedCategory, ProductsAlong, HOM_LIMIT};
use crate::calib::MorphismClass;
use crate::error::{boundary, Result};
use crate::finact::{equivariant_maps, pullback, GMap};

#[derive(Clone, Debug, PartialEq)]
pub struct DualMorphism<O, M> {
    pub src: CompletionObject<O>,
    pub tgt: CompletionObject<O>,
    /// `w: S' → S`
    pub w: GMap,
    /// `ζ: X(w) x → x'`
    pub zeta: M,
}

#[derive(Clone, Debug)]
pub struct DualCompletion<X> {
    pub inner: X,
    pub class: MorphismClass,
}

impl<X: IndexedCategory> DualCompletion<X> {
    pub fn new(inner: X, class: MorphismClass) -> Self {
        DualCompletion { inner, class }
    }

    pub fn object(&self, u: GMap, x: X::Obj) -> Result<CompletionObject<X::Obj>> {
        self.class.require(&u)?;
        if &self.inner.base_of(&x) != u.dom() {
            return Err(boundary("family member does not live over the domain of u"));
        }
        Ok(CompletionObject { u, x })
    }

    /// `ρ: x ↦ (1_U, x)`.
    pub fn unit_rho(&self, x: &X::Obj) -> CompletionObject<X::Obj> {
        CompletionObject {
            u: GMap::identity(&self.inner.base_of(x)),
            x: x.clone(),
        }
    }

    /// Reindexing, by the same pullback as for the cocompletion.
    pub fn coreindex(&self, r: &GMap, o: &CompletionObject<X::Obj>) -> Result<CompletionObject<X::Obj>> {
        let pb = pullback(&o.u, r)?;
        Ok(CompletionObject {
            u: pb.right.clone(),
            x: self.inner.reindex(&pb.left, &o.x)?,
        })
    }

    /// The formal product along `r ∈ ℒ`: `(v, y) ↦ (r∘v, y)`.
    pub fn product(&self, r: &GMap, o: &CompletionObject<X::Obj>) -> Result<CompletionObject<X::Obj>> {
        self.class.require(r)?;
        Ok(CompletionObject {
            u: r.compose(&o.u)?,
            x: o.x.clone(),
        })
    }

    pub fn hom(
        &self,
        a: &CompletionObject<X::Obj>,
        b: &CompletionObject<X::Obj>,
    ) -> Result<Vec<DualMorphism<X::Obj, X::Mor>>> {
        if a.u.cod() != b.u.cod() {
            return Err(boundary("hom between families over different bases"));
        }
        let (ua, ub) = (&a.u, &b.u);
        let ws = equivariant_maps(ub.dom(), ua.dom(), &|p, q| ub.apply(p) == ua.apply(q), HOM_LIMIT)?;
        let mut out = Vec::new();
        for w in ws {
            let wx = self.inner.reindex(&w, &a.x)?;
            for zeta in self.inner.hom(&wx, &b.x)? {
                out.push(DualMorphism {
                    src: a.clone(),
                    tgt: b.clone(),
                    w: w.clone(),
                    zeta,
                });
            }
        }
        Ok(out)
    }

    /// The dual mate `X(g) Π_f o → Π_{f_g} X(g_f) o`; on apexes it runs
    /// backwards, `(a, p) ↦ (a, f_g(p))`.
    pub fn mate(
        &self,
        f: &GMap,
        g: &GMap,
        o: &CompletionObject<X::Obj>,
    ) -> Result<DualMorphism<X::Obj, X::Mor>> {
        let sq = pullback(f, g)?;
        let (g_f, f_g) = (&sq.left, &sq.right);
        let rhs = self.product(f_g, &self.coreindex(g_f, o)?)?;
        let lhs = self.coreindex(g, &self.product(f, o)?)?;
        let l = pullback(&o.u, g_f)?;
        let r = pullback(&f.compose(&o.u)?, g)?;
        let table = l
            .points()
            .iter()
            .map(|&(a, p)| r.index(a, f_g.apply(p)).expect("matching point"))
            .collect();
        let w = GMap::new_unchecked(l.apex.clone(), r.apex.clone(), table);
        let zeta = self.inner.coherence(&w, &r.left, &o.x)?;
        if lhs.u.compose(&w)?.table() != rhs.u.table() {
            return Err(boundary("dual mate does not commute over the base"));
        }
        Ok(DualMorphism {
            src: lhs,
            tgt: rhs,
            w,
            zeta,
        })
    }
}

/// For `X` with products along ℒ, the family `(u, x)` realized as `Π_u x`.
pub fn product_from_family<X: ProductsAlong>(x: &X, o: &CompletionObject<X::Obj>) -> Result<X::Obj> {
    x.product_along(&o.u, &o.x)
}

/// `X(g) Π_f a ≅ Π_{f_g} X(g_f) a` inside `X`.
pub fn check_product_cb<X: ProductsAlong>(x: &X, f: &GMap, g: &GMap, a: &X::Obj) -> Result<bool> {
    let sq = pullback(f, g)?;
    let lhs = x.product_along(&sq.right, &x.reindex(&sq.left, a)?)?;
    let rhs = x.reindex(g, &x.product_along(f, a)?)?;
    Ok(x.find_iso(&lhs, &rhs)?.is_some())
}
