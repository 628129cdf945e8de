//! The ℛ-cocompletion: objects `(u: S → U, x ∈ X(S))` with `u ∈ ℛ`.

use std::fmt;

use super::indexed::{IndexedCategory, SumsAlong, HOM_LIMIT};
use crate::calib::MorphismClass;
use crate::error::{boundary, Result};
use crate::finact::{coproduct, equivariant_maps, pullback, sum_map, Coproduct, GMap, GSet};

#[derive(Clone, Debug, PartialEq)]
pub struct CompletionObject<O> {
    pub u: GMap,
    pub x: O,
}

/// `(w, ξ): (u, x) → (u', x')` with `u'∘w = u` and `ξ: x → X(w) x'`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompletionMorphism<O, M> {
    pub src: CompletionObject<O>,
    pub tgt: CompletionObject<O>,
    pub w: GMap,
    pub xi: M,
}

#[derive(Clone, Debug)]
pub struct Completion<X> {
    pub inner: X,
    pub class: MorphismClass,
}

impl<X: IndexedCategory> Completion<X> {
    pub fn new(inner: X, class: MorphismClass) -> Self {
        Completion { inner, class }
    }

    pub fn object(&self, u: GMap, x: X::Obj) -> Result<CompletionObject<X::Obj>> {
        self.class.require(&u)?;
        if &self.inner.base_of(&x) != u.dom() {
            return Err(boundary("family member does not live over the domain of u"));
        }
        Ok(CompletionObject { u, x })
    }

    /// `η: x ↦ (1_U, x)`.
    pub fn unit_eta(&self, x: &X::Obj) -> CompletionObject<X::Obj> {
        CompletionObject {
            u: GMap::identity(&self.inner.base_of(x)),
            x: x.clone(),
        }
    }

    /// `(r∘u, x)` for `r ∈ ℛ`.
    pub fn pushforward(&self, r: &GMap, o: &CompletionObject<X::Obj>) -> Result<CompletionObject<X::Obj>> {
        self.class.require(r)?;
        Ok(CompletionObject {
            u: r.compose(&o.u)?,
            x: o.x.clone(),
        })
    }

    /// `(u, (u', x)) ↦ (u∘u', x)`.
    pub fn mu_flatten(
        &self,
        o: &CompletionObject<CompletionObject<X::Obj>>,
    ) -> Result<CompletionObject<X::Obj>> {
        Ok(CompletionObject {
            u: o.u.compose(&o.x.u)?,
            x: o.x.x.clone(),
        })
    }

    /// The completion applied to `η`: `(u, x) ↦ (u, (1, x))`.
    pub fn completed_eta(&self, o: &CompletionObject<X::Obj>) -> CompletionObject<CompletionObject<X::Obj>> {
        CompletionObject {
            u: o.u.clone(),
            x: self.unit_eta(&o.x),
        }
    }

    /// The mate `Σ_{f_g} X(g_f) o → X(g) Σ_f o` for the pullback of `f` and `g`:
    /// `(a, p) ↦ (a, f_g(p))` on apexes.
    pub fn mate(
        &self,
        f: &GMap,
        g: &GMap,
        o: &CompletionObject<X::Obj>,
    ) -> Result<CompletionMorphism<X::Obj, X::Mor>> {
        let sq = pullback(f, g)?;
        let (g_f, f_g) = (&sq.left, &sq.right);
        let lhs = self.pushforward(f_g, &self.reindex(g_f, o)?)?;
        let rhs = self.reindex(g, &self.pushforward(f, o)?)?;
        let l = pullback(&o.u, g_f)?;
        let r = pullback(&f.compose(&o.u)?, g)?;
        let table = l
            .points()
            .iter()
            .map(|&(a, p)| r.index(a, f_g.apply(p)).expect("matching point"))
            .collect();
        let w = GMap::new_unchecked(l.apex.clone(), r.apex.clone(), table);
        let xi = self
            .inner
            .inverse(&self.inner.coherence(&w, &r.left, &o.x)?)
            .ok_or_else(|| boundary("coherence is not invertible"))?;
        self.morphism(lhs, rhs, w, xi)
    }

    pub fn morphism(
        &self,
        src: CompletionObject<X::Obj>,
        tgt: CompletionObject<X::Obj>,
        w: GMap,
        xi: X::Mor,
    ) -> Result<CompletionMorphism<X::Obj, X::Mor>> {
        if w.dom() != src.u.dom() || w.cod() != tgt.u.dom() {
            return Err(boundary("completion morphism: w does not run between the apexes"));
        }
        if tgt.u.compose(&w)?.table() != src.u.table() {
            return Err(boundary("completion morphism: w does not commute over the base"));
        }
        Ok(CompletionMorphism { src, tgt, w, xi })
    }

    /// Transposes `(w, ξ): (r∘v, y) → o'` across `pushforward ⊣ reindex`
    /// to `(v, y) → X(r) o'`; `o` is `(v, y)`.
    pub fn transpose(
        &self,
        r: &GMap,
        o: &CompletionObject<X::Obj>,
        m: &CompletionMorphism<X::Obj, X::Mor>,
    ) -> Result<CompletionMorphism<X::Obj, X::Mor>> {
        let o2 = &m.tgt;
        let pb = pullback(&o2.u, r)?;
        let table = o
            .u
            .dom()
            .points()
            .map(|s| pb.index(m.w.apply(s), o.u.apply(s)).ok_or_else(|| boundary("not a transposable morphism")))
            .collect::<Result<Vec<_>>>()?;
        let wt = GMap::new_unchecked(o.u.dom().clone(), pb.apex.clone(), table);
        let coh = self.inner.coherence(&wt, &pb.left, &o2.x)?;
        let back = self
            .inner
            .inverse(&coh)
            .ok_or_else(|| boundary("coherence is not invertible"))?;
        let xi = self.inner.compose(&m.xi, &back)?;
        self.morphism(o.clone(), self.reindex(r, o2)?, wt, xi)
    }
}

impl<X: IndexedCategory> IndexedCategory for Completion<X> {
    type Obj = CompletionObject<X::Obj>;
    type Mor = CompletionMorphism<X::Obj, X::Mor>;

    fn name(&self) -> String {
        format!("cocompletion[{}]({})", self.class.name(), self.inner.name())
    }

    fn base_of(&self, o: &Self::Obj) -> GSet {
        o.u.cod().clone()
    }

    /// `(u_r, X(r_u) x)` via the pullback of `u` along `r`.
    fn reindex(&self, r: &GMap, o: &Self::Obj) -> Result<Self::Obj> {
        let pb = pullback(&o.u, r)?;
        Ok(CompletionObject {
            u: pb.right.clone(),
            x: self.inner.reindex(&pb.left, &o.x)?,
        })
    }

    fn reindex_mor(&self, r: &GMap, a: &Self::Obj, b: &Self::Obj, m: &Self::Mor) -> Result<Self::Mor> {
        let pa = pullback(&a.u, r)?;
        let pb = pullback(&b.u, r)?;
        let table = pa
            .points()
            .iter()
            .map(|&(s, v)| pb.index(m.w.apply(s), v).expect("matching point"))
            .collect();
        let wr = GMap::new_unchecked(pa.apex.clone(), pb.apex.clone(), table);
        let wx = self.inner.reindex(&m.w, &b.x)?;
        let step = self.inner.reindex_mor(&pa.left, &a.x, &wx, &m.xi)?;
        let c1 = self.inner.coherence(&pa.left, &m.w, &b.x)?;
        let c2 = self.inner.coherence(&wr, &pb.left, &b.x)?;
        let c2inv = self
            .inner
            .inverse(&c2)
            .ok_or_else(|| boundary("coherence is not invertible"))?;
        let xi = self.inner.compose(&self.inner.compose(&step, &c1)?, &c2inv)?;
        let src = self.reindex(r, a)?;
        let tgt = self.reindex(r, b)?;
        self.morphism(src, tgt, wr, xi)
    }

    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<Self::Mor>> {
        if a.u.cod() != b.u.cod() {
            return Err(boundary("hom between families over different bases"));
        }
        let (ua, ub) = (&a.u, &b.u);
        let ws = equivariant_maps(ua.dom(), ub.dom(), &|p, q| ua.apply(p) == ub.apply(q), HOM_LIMIT)?;
        let mut out = Vec::new();
        for w in ws {
            let wx = self.inner.reindex(&w, &b.x)?;
            for xi in self.inner.hom(&a.x, &wx)? {
                out.push(CompletionMorphism {
                    src: a.clone(),
                    tgt: b.clone(),
                    w: w.clone(),
                    xi,
                });
            }
        }
        Ok(out)
    }

    fn identity(&self, a: &Self::Obj) -> Self::Mor {
        CompletionMorphism {
            src: a.clone(),
            tgt: a.clone(),
            w: GMap::identity(a.u.dom()),
            xi: self.inner.unit_coherence(&a.x).expect("unit coherence exists"),
        }
    }

    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor> {
        let gx = self.inner.reindex(&g.w, &g.tgt.x)?;
        let moved = self.inner.reindex_mor(&f.w, &g.src.x, &gx, &g.xi)?;
        let coh = self.inner.coherence(&f.w, &g.w, &g.tgt.x)?;
        let xi = self.inner.compose(&self.inner.compose(&f.xi, &moved)?, &coh)?;
        self.morphism(f.src.clone(), g.tgt.clone(), f.w.then(&g.w)?, xi)
    }

    fn inverse(&self, m: &Self::Mor) -> Option<Self::Mor> {
        let winv = m.w.inverse()?;
        let inner = &self.inner;
        let unit = inner.unit_coherence(&m.tgt.x).ok()?;
        let coh = inner.coherence(&winv, &m.w, &m.tgt.x).ok()?;
        let wx = inner.reindex(&m.w, &m.tgt.x).ok()?;
        let xi_inv = inner.inverse(&m.xi)?;
        let moved = inner.reindex_mor(&winv, &wx, &m.src.x, &xi_inv).ok()?;
        let xi = inner
            .compose(&inner.compose(&unit, &inner.inverse(&coh)?).ok()?, &moved)
            .ok()?;
        Some(CompletionMorphism {
            src: m.tgt.clone(),
            tgt: m.src.clone(),
            w: winv,
            xi,
        })
    }

    fn find_iso(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Option<Self::Mor>> {
        if a.u.cod() != b.u.cod() || a.u.dom().size() != b.u.dom().size() {
            return Ok(None);
        }
        let (ua, ub) = (&a.u, &b.u);
        let ws = equivariant_maps(ua.dom(), ub.dom(), &|p, q| ua.apply(p) == ub.apply(q), HOM_LIMIT)?;
        for w in ws.into_iter().filter(GMap::is_iso) {
            let wx = self.inner.reindex(&w, &b.x)?;
            if let Some(xi) = self.inner.find_iso(&a.x, &wx)? {
                return Ok(Some(CompletionMorphism {
                    src: a.clone(),
                    tgt: b.clone(),
                    w,
                    xi,
                }));
            }
        }
        Ok(None)
    }

    fn unit_coherence(&self, o: &Self::Obj) -> Result<Self::Mor> {
        let u = &o.u;
        let pb = pullback(u, &GMap::identity(u.cod()))?;
        let table = u
            .dom()
            .points()
            .map(|s| pb.index(s, u.apply(s)).expect("graph point"))
            .collect();
        let w = GMap::new_unchecked(u.dom().clone(), pb.apex.clone(), table);
        let first = self.inner.unit_coherence(&o.x)?;
        let coh = self.inner.coherence(&w, &pb.left, &o.x)?;
        let back = self
            .inner
            .inverse(&coh)
            .ok_or_else(|| boundary("coherence is not invertible"))?;
        let xi = self.inner.compose(&first, &back)?;
        self.morphism(o.clone(), self.reindex(&GMap::identity(u.cod()), o)?, w, xi)
    }

    fn coherence(&self, f: &GMap, g: &GMap, o: &Self::Obj) -> Result<Self::Mor> {
        let p1 = pullback(&o.u, g)?;
        let p2 = pullback(&p1.right, f)?;
        let p3 = pullback(&o.u, &g.compose(f)?)?;
        let table = p2
            .points()
            .iter()
            .map(|&(j, s)| p3.index(p1.point(j).0, s).expect("matching point"))
            .collect();
        let w = GMap::new_unchecked(p2.apex.clone(), p3.apex.clone(), table);
        let c = self.inner.coherence(&p2.left, &p1.left, &o.x)?;
        let d = self.inner.coherence(&w, &p3.left, &o.x)?;
        let dinv = self
            .inner
            .inverse(&d)
            .ok_or_else(|| boundary("coherence is not invertible"))?;
        let xi = self.inner.compose(&c, &dinv)?;
        let src = self.reindex(f, &self.reindex(g, o)?)?;
        let tgt = self.reindex(&g.compose(f)?, o)?;
        self.morphism(src, tgt, w, xi)
    }

    fn glue(&self, base: &Coproduct, a: &Self::Obj, b: &Self::Obj) -> Result<Self::Obj> {
        let apex = coproduct(a.u.dom(), b.u.dom())?;
        let u = sum_map(&a.u, &b.u, &apex, base)?;
        self.class.require(&u)?;
        Ok(CompletionObject {
            u,
            x: self.inner.glue(&apex, &a.x, &b.x)?,
        })
    }

    fn describe(&self, o: &Self::Obj) -> String {
        format!("({:?} -> {:?}, {})", o.u.dom().size(), o.u.table(), self.inner.describe(&o.x))
    }
}

impl<X: IndexedCategory> SumsAlong for Completion<X> {
    fn sum_along(&self, r: &GMap, o: &Self::Obj) -> Result<Self::Obj> {
        self.pushforward(r, o)
    }
}

impl<O: fmt::Debug> fmt::Display for CompletionObject<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} -> {} {:?}, {:?})", self.u.dom().size(), self.u.cod().size(), self.u.table(), self.x)
    }
}
