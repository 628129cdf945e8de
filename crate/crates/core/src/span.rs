//! Spans `U ← S → V` of finite G-sets: composition by pullback, span
//! morphisms, the adjunction `r_* ⊣ r^*`, coproducts, and iso classes.

use serde::Serialize;

use crate::calib::MorphismClass;
use crate::error::{boundary, Error, Result};
use crate::finact::{
    coproduct, find_iso_labelled, orbit_types, pullback, realize_types, render_types, sum_map,
    Coproduct, GMap, GSet, Pullback,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    left: GMap,
    right: GMap,
}

impl Span {
    pub fn new(left: GMap, right: GMap) -> Result<Self> {
        if left.dom() != right.dom() {
            return Err(boundary("span legs have different domains"));
        }
        Ok(Span { left, right })
    }

    /// A span whose left leg must belong to `class`.
    pub fn in_class(class: &MorphismClass, left: GMap, right: GMap) -> Result<Self> {
        class.require(&left)?;
        Span::new(left, right)
    }

    pub fn left(&self) -> &GMap {
        &self.left
    }

    pub fn right(&self) -> &GMap {
        &self.right
    }

    pub fn apex(&self) -> &GSet {
        self.left.dom()
    }

    pub fn src(&self) -> &GSet {
        self.left.cod()
    }

    pub fn tgt(&self) -> &GSet {
        self.right.cod()
    }

    pub fn reversed(&self) -> Span {
        Span {
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    /// The empty span `U ← 0 → V`.
    pub fn empty(u: &GSet, v: &GSet) -> Self {
        Span {
            left: GMap::from_initial(u),
            right: GMap::from_initial(v),
        }
    }
}

/// A map of apexes commuting strictly with both legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanMorphism {
    pub src: Span,
    pub tgt: Span,
    pub map: GMap,
}

impl SpanMorphism {
    pub fn new(src: Span, tgt: Span, map: GMap) -> Result<Self> {
        if src.src() != tgt.src() || src.tgt() != tgt.tgt() {
            return Err(boundary("span morphism between spans with different ends"));
        }
        if map.dom() != src.apex() || map.cod() != tgt.apex() {
            return Err(boundary("span morphism is not a map of apexes"));
        }
        if tgt.left.compose(&map)?.table() != src.left.table()
            || tgt.right.compose(&map)?.table() != src.right.table()
        {
            return Err(boundary("span morphism does not commute with the legs"));
        }
        Ok(SpanMorphism { src, tgt, map })
    }

    pub fn identity(p: &Span) -> Self {
        SpanMorphism {
            src: p.clone(),
            tgt: p.clone(),
            map: GMap::identity(p.apex()),
        }
    }

    pub fn then(&self, next: &SpanMorphism) -> Result<SpanMorphism> {
        SpanMorphism::new(self.src.clone(), next.tgt.clone(), self.map.then(&next.map)?)
    }

    pub fn is_iso(&self) -> bool {
        self.map.is_iso()
    }

    pub fn inverse(&self) -> Option<SpanMorphism> {
        Some(SpanMorphism {
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            map: self.map.inverse()?,
        })
    }
}

/// A composite together with the pullback that built its apex.
#[derive(Clone, Debug)]
pub struct Composite {
    pub span: Span,
    pub apex: Pullback,
}

/// `p` then `q`: apex `S ×_V T`, legs `u∘pr₁` and `w∘pr₂`.
pub fn compose_full(p: &Span, q: &Span) -> Result<Composite> {
    if p.tgt() != q.src() {
        return Err(boundary("spans do not compose: target and source differ"));
    }
    let pb = pullback(&p.right, &q.left)?;
    let left = p.left.compose(&pb.left)?;
    let right = q.right.compose(&pb.right)?;
    Ok(Composite {
        span: Span { left, right },
        apex: pb,
    })
}

pub fn compose_spans(p: &Span, q: &Span) -> Result<Span> {
    Ok(compose_full(p, q)?.span)
}

/// Composition that also checks the left leg of the result against `class`.
pub fn compose_spans_in(class: &MorphismClass, p: &Span, q: &Span) -> Result<Span> {
    let s = compose_spans(p, q)?;
    class.require(s.left())?;
    Ok(s)
}

pub fn identity_span(u: &GSet) -> Span {
    let id = GMap::identity(u);
    Span {
        left: id.clone(),
        right: id,
    }
}

/// `f_* = (U ←1 U →f V)`.
pub fn lower_star(f: &GMap) -> Span {
    Span {
        left: GMap::identity(f.dom()),
        right: f.clone(),
    }
}

/// `r^* = (V ←r U →1 U)`.
pub fn upper_star(class: &MorphismClass, r: &GMap) -> Result<Span> {
    class.require(r)?;
    Ok(Span {
        left: r.clone(),
        right: GMap::identity(r.dom()),
    })
}

/// `p;(1)` and `(1);p` back to `p`.
pub fn left_unitor(p: &Span) -> Result<SpanMorphism> {
    let c = compose_full(&identity_span(p.src()), p)?;
    SpanMorphism::new(c.span, p.clone(), c.apex.right.clone())
}

pub fn right_unitor(p: &Span) -> Result<SpanMorphism> {
    let c = compose_full(p, &identity_span(p.tgt()))?;
    SpanMorphism::new(c.span, p.clone(), c.apex.left.clone())
}

/// `(p;q);r → p;(q;r)`, `((s,t),w) ↦ (s,(t,w))`.
pub fn associator(p: &Span, q: &Span, r: &Span) -> Result<SpanMorphism> {
    let pq = compose_full(p, q)?;
    let pq_r = compose_full(&pq.span, r)?;
    let qr = compose_full(q, r)?;
    let p_qr = compose_full(p, &qr.span)?;
    let table = pq_r
        .apex
        .points()
        .iter()
        .map(|&(i, w)| {
            let (s, t) = pq.apex.point(i);
            let j = qr.apex.index(t, w).expect("matching point");
            p_qr.apex.index(s, j).expect("matching point")
        })
        .collect();
    SpanMorphism::new(
        pq_r.span,
        p_qr.span,
        GMap::new_unchecked(pq_r.apex.apex.clone(), p_qr.apex.apex.clone(), table),
    )
}

/// `φ;q : p;q → p';q` for `φ: p → p'`.
pub fn whisker_right(phi: &SpanMorphism, q: &Span) -> Result<SpanMorphism> {
    let a = compose_full(&phi.src, q)?;
    let b = compose_full(&phi.tgt, q)?;
    let table = a
        .apex
        .points()
        .iter()
        .map(|&(s, t)| b.apex.index(phi.map.apply(s), t).expect("matching point"))
        .collect();
    SpanMorphism::new(
        a.span,
        b.span,
        GMap::new_unchecked(a.apex.apex.clone(), b.apex.apex.clone(), table),
    )
}

/// `p;ψ : p;q → p;q'` for `ψ: q → q'`.
pub fn whisker_left(p: &Span, psi: &SpanMorphism) -> Result<SpanMorphism> {
    let a = compose_full(p, &psi.src)?;
    let b = compose_full(p, &psi.tgt)?;
    let table = a
        .apex
        .points()
        .iter()
        .map(|&(s, t)| b.apex.index(s, psi.map.apply(t)).expect("matching point"))
        .collect();
    SpanMorphism::new(
        a.span,
        b.span,
        GMap::new_unchecked(a.apex.apex.clone(), b.apex.apex.clone(), table),
    )
}

/// Unit and counit of `r_* ⊣ r^*`.
#[derive(Clone, Debug)]
pub struct SpanAdjunction {
    /// `1_U ⇒ r_*;r^*`, the diagonal into the kernel pair.
    pub unit: SpanMorphism,
    /// `r^*;r_* ⇒ 1_V`, given by `r`.
    pub counit: SpanMorphism,
}

pub fn adjunction(class: &MorphismClass, r: &GMap) -> Result<SpanAdjunction> {
    let lower = lower_star(r);
    let upper = upper_star(class, r)?;
    let u = r.dom();
    let kp = compose_full(&lower, &upper)?;
    let diag = u
        .points()
        .map(|x| kp.apex.index(x, x).expect("diagonal point"))
        .collect();
    let unit = SpanMorphism::new(
        identity_span(u),
        kp.span.clone(),
        GMap::new_unchecked(u.clone(), kp.apex.apex.clone(), diag),
    )?;
    let ud = compose_full(&upper, &lower)?;
    let counit = SpanMorphism::new(ud.span.clone(), identity_span(r.cod()), ud.span.left.clone())?;
    Ok(SpanAdjunction { unit, counit })
}

/// Result of one triangle identity: the composite should be the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleCheck {
    pub name: &'static str,
    pub passed: bool,
    pub composite: Vec<usize>,
}

/// Both triangle identities of `r_* ⊣ r^*`, composed exactly through the
/// unitors and associators.
pub fn check_adjunction(class: &MorphismClass, r: &GMap) -> Result<Vec<TriangleCheck>> {
    let adj = adjunction(class, r)?;
    let lower = lower_star(r);
    let upper = upper_star(class, r)?;
    let inv = |m: SpanMorphism| m.inverse().ok_or_else(|| boundary("unitor is not invertible"));

    // r_* ≅ 1;r_* ⇒ (r_*;r^*);r_* ≅ r_*;(r^*;r_*) ⇒ r_*;1 ≅ r_*
    let first = inv(left_unitor(&lower)?)?
        .then(&whisker_right(&adj.unit, &lower)?)?
        .then(&associator(&lower, &upper, &lower)?)?
        .then(&whisker_left(&lower, &adj.counit)?)?
        .then(&right_unitor(&lower)?)?;
    // r^* ≅ r^*;1 ⇒ r^*;(r_*;r^*) ≅ (r^*;r_*);r^* ⇒ 1;r^* ≅ r^*
    let assoc = associator(&upper, &lower, &upper)?;
    let second = inv(right_unitor(&upper)?)?
        .then(&whisker_left(&upper, &adj.unit)?)?
        .then(&inv(assoc)?)?
        .then(&whisker_right(&adj.counit, &upper)?)?
        .then(&left_unitor(&upper)?)?;
    Ok(vec![
        TriangleCheck {
            name: "counit r_* after r_* unit",
            passed: first.map.is_identity(),
            composite: first.map.table().to_vec(),
        },
        TriangleCheck {
            name: "r^* counit after unit r^*",
            passed: second.map.is_identity(),
            composite: second.map.table().to_vec(),
        },
    ])
}

/// An isomorphism of apexes commuting with both legs.
pub fn span_iso(p: &Span, q: &Span) -> Option<SpanMorphism> {
    if p.src() != q.src() || p.tgt() != q.tgt() {
        return None;
    }
    let table = find_iso_labelled(
        p.apex(),
        &|x| vec![p.left.apply(x), p.right.apply(x)],
        q.apex(),
        &|x| vec![q.left.apply(x), q.right.apply(x)],
    )?;
    Some(SpanMorphism {
        src: p.clone(),
        tgt: q.clone(),
        map: GMap::new_unchecked(p.apex().clone(), q.apex().clone(), table),
    })
}

/// `p = v_* ∘ u^*` with an explicit iso from the composite to `p`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub u: GMap,
    pub v: GMap,
    pub composite: Span,
    pub certificate: SpanMorphism,
}

pub fn decompose(p: &Span) -> Result<Decomposition> {
    let up = upper_star(&MorphismClass::all(), &p.left)?;
    let c = compose_full(&up, &lower_star(&p.right))?;
    let certificate = SpanMorphism::new(c.span.clone(), p.clone(), c.apex.left.clone())?;
    if !certificate.is_iso() {
        return Err(boundary("decomposition certificate is not invertible"));
    }
    Ok(Decomposition {
        u: p.left.clone(),
        v: p.right.clone(),
        composite: c.span,
        certificate,
    })
}

/// `U+V ← S+T → W` from `p: U ⇸ W` and `q: V ⇸ W`.
pub fn bicoproduct_cotuple(class: &MorphismClass, p: &Span, q: &Span) -> Result<(Span, Coproduct)> {
    if !class.closed_under_coproducts() {
        return Err(Error::ClassViolation {
            class: class.name().to_string(),
            detail: "cotupling needs a class closed under coproducts".into(),
        });
    }
    if p.tgt() != q.tgt() {
        return Err(boundary("cotuple: spans have different targets"));
    }
    let base = coproduct(p.src(), q.src())?;
    let apex = coproduct(p.apex(), q.apex())?;
    let left = sum_map(&p.left, &q.left, &apex, &base)?;
    let right = apex.copair(&p.right, &q.right)?;
    Ok((Span::in_class(class, left, right)?, base))
}

/// The coproduct `p + q` in the hom-category, with its injections.
#[derive(Clone, Debug)]
pub struct LocalCoproduct {
    pub span: Span,
    pub inj1: SpanMorphism,
    pub inj2: SpanMorphism,
}

pub fn local_coproduct(p: &Span, q: &Span) -> Result<LocalCoproduct> {
    if p.src() != q.src() || p.tgt() != q.tgt() {
        return Err(boundary("local coproduct of spans with different ends"));
    }
    let apex = coproduct(p.apex(), q.apex())?;
    let span = Span::new(apex.copair(&p.left, &q.left)?, apex.copair(&p.right, &q.right)?)?;
    let inj1 = SpanMorphism::new(p.clone(), span.clone(), apex.inj1.clone())?;
    let inj2 = SpanMorphism::new(q.clone(), span.clone(), apex.inj2.clone())?;
    Ok(LocalCoproduct { span, inj1, inj2 })
}

/// A span iso class: canonical representative and normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanIsoClass {
    pub rep: Span,
    pub form: String,
}

impl SpanIsoClass {
    pub fn of(p: &Span) -> Self {
        let types = orbit_types(p.apex(), &|x| vec![p.left.apply(x), p.right.apply(x)]);
        let (_, maps) = realize_types(p.apex().group(), &types, &[p.src().clone(), p.tgt().clone()]);
        let mut maps = maps.into_iter();
        let left = maps.next().expect("two legs");
        let right = maps.next().expect("two legs");
        SpanIsoClass {
            rep: Span { left, right },
            form: render_types(&types),
        }
    }
}

pub fn cl_compose(a: &SpanIsoClass, b: &SpanIsoClass) -> Result<SpanIsoClass> {
    Ok(SpanIsoClass::of(&compose_spans(&a.rep, &b.rep)?))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::finact::{canonical_form, terminal};
    use crate::group::FiniteGroup;

    fn c2() -> (Arc<FiniteGroup>, GSet, GSet) {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let f = GSet::cosets(g.clone(), &g.trivial_subgroup());
        let pt = terminal(&g);
        (g, f, pt)
    }

    fn free_span() -> Span {
        let (_, f, _) = c2();
        let bang = GMap::to_terminal(&f);
        Span::new(bang.clone(), bang).unwrap()
    }

    #[test]
    fn free_span_squares_to_two_copies() {
        let (_, f, _) = c2();
        let p = free_span();
        let pp = compose_spans(&p, &p).unwrap();
        let ff = coproduct(&f, &f).unwrap().sum;
        assert_eq!(pp.apex().size(), 4);
        assert_eq!(canonical_form(pp.apex()), canonical_form(&ff));
    }

    #[test]
    fn identity_composition() {
        let p = free_span();
        let left = compose_spans(&identity_span(p.src()), &p).unwrap();
        assert!(span_iso(&left, &p).is_some());
        assert!(left_unitor(&p).unwrap().is_iso());
        assert!(right_unitor(&p).unwrap().is_iso());
        assert_eq!(lower_star(&GMap::identity(p.src())), identity_span(p.src()));
    }

    #[test]
    fn kernel_pair_and_triangles() {
        let (_, f, _) = c2();
        let r = GMap::to_terminal(&f);
        let all = MorphismClass::all();
        let kp = compose_spans(&lower_star(&r), &upper_star(&all, &r).unwrap()).unwrap();
        assert_eq!(kp.apex().size(), 4);
        for t in check_adjunction(&all, &r).unwrap() {
            assert!(t.passed, "{t:?}");
        }
        for t in check_adjunction(&all, &GMap::identity(&f)).unwrap() {
            assert!(t.passed);
        }
        let adj = adjunction(&all, &GMap::identity(&f)).unwrap();
        assert!(adj.unit.is_iso() && adj.counit.is_iso());
        assert!(upper_star(&MorphismClass::injective(), &r).is_err());
    }

    #[test]
    fn lower_star_composes() {
        let (g, f, pt) = c2();
        let r = GMap::identity(&f);
        let s = GMap::to_terminal(&f);
        let c = compose_spans(&lower_star(&r), &lower_star(&s)).unwrap();
        assert!(span_iso(&c, &lower_star(&s.compose(&r).unwrap())).is_some());
        let _ = (g, pt);
    }

    #[test]
    fn decomposition_certificate() {
        let p = free_span();
        let d = decompose(&p).unwrap();
        assert!(d.certificate.is_iso());
        let id = identity_span(p.src());
        let d = decompose(&id).unwrap();
        assert!(d.u.is_identity() && d.v.is_identity());
    }

    #[test]
    fn cotuple_and_local_coproducts() {
        let (g, _, pt) = c2();
        let p = free_span();
        let all = MorphismClass::all();
        let (cot, base) = bicoproduct_cotuple(&all, &p, &p).unwrap();
        let back = compose_spans(&lower_star(&base.inj1), &cot).unwrap();
        assert!(span_iso(&back, &p).is_some());
        assert!(bicoproduct_cotuple(&MorphismClass::injective(), &p, &p).is_err());

        let lc = local_coproduct(&p, &Span::empty(&pt, &pt)).unwrap();
        assert!(span_iso(&lc.span, &p).is_some());
        let a = local_coproduct(&p, &identity_span(&pt)).unwrap();
        let b = local_coproduct(&identity_span(&pt), &p).unwrap();
        assert!(span_iso(&a.span, &b.span).is_some());
        let _ = g;
    }

    #[test]
    fn iso_classes() {
        let (_, f, pt) = c2();
        let p = free_span();
        let id = identity_span(&pt);
        assert_ne!(SpanIsoClass::of(&p), SpanIsoClass::of(&id));
        assert!(span_iso(&p, &id).is_none());
        let swap = GMap::new(f.clone(), f.clone(), vec![1, 0]).unwrap();
        let p2 = Span::new(p.left().compose(&swap).unwrap(), p.right().clone()).unwrap();
        assert_eq!(SpanIsoClass::of(&p), SpanIsoClass::of(&p2));
        let cls = SpanIsoClass::of(&p);
        assert!(span_iso(&cls.rep, &p).is_some());
        let sq = cl_compose(&cls, &cls).unwrap();
        assert_eq!(sq, SpanIsoClass::of(&compose_spans(&p, &p).unwrap()));
    }
}
