//! Slices `ℰ/U` and the functors `Σ_u ⊣ Δ_u ⊣ Π_u` between them.

use std::collections::HashMap;

use super::gset::{GMap, GSet};
use super::limits::{guard, pullback, pullback_with_limit, Pullback, DEFAULT_MAX_POINTS};
use crate::error::{boundary, Result};

/// An object `A → U` of the slice over `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceObject {
    map: GMap,
}

impl SliceObject {
    pub fn new(map: GMap) -> Self {
        SliceObject { map }
    }

    pub fn identity(u: &GSet) -> Self {
        SliceObject::new(GMap::identity(u))
    }

    pub fn empty(u: &GSet) -> Self {
        SliceObject::new(GMap::from_initial(u))
    }

    pub fn map(&self) -> &GMap {
        &self.map
    }

    pub fn base(&self) -> &GSet {
        self.map.cod()
    }

    pub fn total(&self) -> &GSet {
        self.map.dom()
    }
}

/// A map of total sets commuting with the structure maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceMorphism {
    pub src: SliceObject,
    pub tgt: SliceObject,
    pub map: GMap,
}

impl SliceMorphism {
    pub fn new(src: SliceObject, tgt: SliceObject, map: GMap) -> Result<Self> {
        if src.base() != tgt.base() || map.dom() != src.total() || map.cod() != tgt.total() {
            return Err(boundary("slice morphism between mismatched slices"));
        }
        if tgt.map().compose(&map)?.table() != src.map().table() {
            return Err(boundary("slice morphism does not commute over the base"));
        }
        Ok(SliceMorphism { src, tgt, map })
    }

    pub fn identity(a: &SliceObject) -> Self {
        SliceMorphism {
            src: a.clone(),
            tgt: a.clone(),
            map: GMap::identity(a.total()),
        }
    }

    pub fn then(&self, next: &SliceMorphism) -> Result<SliceMorphism> {
        SliceMorphism::new(self.src.clone(), next.tgt.clone(), self.map.then(&next.map)?)
    }
}

/// `Σ_u a = u ∘ a`.
pub fn sigma(u: &GMap, a: &SliceObject) -> Result<SliceObject> {
    if a.base() != u.dom() {
        return Err(boundary("Σ_u: slice is not over the domain of u"));
    }
    Ok(SliceObject::new(u.compose(a.map())?))
}

/// `Δ_u b`: the pullback of `b` along `u`, with points `(s, y)`.
pub fn delta(u: &GMap, b: &SliceObject) -> Result<SliceObject> {
    Ok(SliceObject::new(delta_pullback(u, b)?.left))
}

pub(crate) fn delta_pullback(u: &GMap, b: &SliceObject) -> Result<Pullback> {
    if b.base() != u.cod() {
        return Err(boundary("Δ_u: slice is not over the codomain of u"));
    }
    pullback(u, b.map())
}

/// `Δ_u` on a slice morphism `φ: b → b'`.
pub fn delta_mor(u: &GMap, phi: &SliceMorphism) -> Result<SliceMorphism> {
    let src = delta_pullback(u, &phi.src)?;
    let tgt = delta_pullback(u, &phi.tgt)?;
    let table = src
        .points()
        .iter()
        .map(|&(s, y)| tgt.index(s, phi.map.apply(y)).expect("commuting square"))
        .collect();
    SliceMorphism::new(
        SliceObject::new(src.left.clone()),
        SliceObject::new(tgt.left.clone()),
        GMap::new_unchecked(src.apex.clone(), tgt.apex.clone(), table),
    )
}

/// `Σ_u` on a slice morphism: the same underlying map.
pub fn sigma_mor(u: &GMap, phi: &SliceMorphism) -> Result<SliceMorphism> {
    SliceMorphism::new(sigma(u, &phi.src)?, sigma(u, &phi.tgt)?, phi.map.clone())
}

/// `Π_u a` with its sections, for `u: S → U` and `a: A → S`.
///
/// A point over `x ∈ U` is a section of `a` over the fiber `u⁻¹(x)`, listed as
/// its values on the fiber in increasing point order. Points are ordered by `x`,
/// then lexicographically by section; `g` acts by `(g·σ)(y) = g·σ(g⁻¹·y)`.
#[derive(Clone, Debug)]
pub struct DependentProduct {
    pub slice: SliceObject,
    pub u: GMap,
    pub a: SliceObject,
    fibers: Vec<Vec<usize>>,
    slot: Vec<usize>,
    sections: Vec<(usize, Vec<usize>)>,
    index: HashMap<(usize, Vec<usize>), usize>,
}

impl DependentProduct {
    pub fn section(&self, b: usize) -> &(usize, Vec<usize>) {
        &self.sections[b]
    }

    /// `σ_b(s)` for `s` in the fiber over the base point of `b`.
    pub fn evaluate(&self, b: usize, s: usize) -> usize {
        let (x, sec) = &self.sections[b];
        debug_assert_eq!(self.u.apply(s), *x);
        sec[self.slot[s]]
    }

    pub fn lookup(&self, x: usize, section: &[usize]) -> Option<usize> {
        self.index.get(&(x, section.to_vec())).copied()
    }

    pub fn fiber(&self, x: usize) -> &[usize] {
        &self.fibers[x]
    }
}

pub fn pi(u: &GMap, a: &SliceObject) -> Result<SliceObject> {
    Ok(pi_full(u, a, DEFAULT_MAX_POINTS)?.slice)
}

pub fn pi_with_limit(u: &GMap, a: &SliceObject, bound: usize) -> Result<SliceObject> {
    Ok(pi_full(u, a, bound)?.slice)
}

pub fn pi_full(u: &GMap, a: &SliceObject, bound: usize) -> Result<DependentProduct> {
    if a.base() != u.dom() {
        return Err(boundary("Π_u: slice is not over the domain of u"));
    }
    let (s_set, u_set) = (u.dom(), u.cod());
    let fibers = u.fibers();
    let slot = {
        let mut slot = vec![0; s_set.size()];
        for f in &fibers {
            for (i, &s) in f.iter().enumerate() {
                slot[s] = i;
            }
        }
        slot
    };
    let choices = a.map().fibers();
    let needed: u128 = fibers
        .iter()
        .map(|f| {
            f.iter()
                .fold(1u128, |acc, &s| acc.saturating_mul(choices[s].len() as u128))
        })
        .fold(0u128, |acc, n| acc.saturating_add(n));
    guard(needed, bound)?;

    let mut sections: Vec<(usize, Vec<usize>)> = Vec::with_capacity(needed as usize);
    for x in u_set.points() {
        let fiber = &fibers[x];
        if fiber.iter().any(|&s| choices[s].is_empty()) {
            continue;
        }
        let mut pick = vec![0usize; fiber.len()];
        loop {
            sections.push((x, fiber.iter().zip(&pick).map(|(&s, &i)| choices[s][i]).collect()));
            let mut i = fiber.len();
            let done = loop {
                if i == 0 {
                    break true;
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < choices[fiber[i]].len() {
                    break false;
                }
                pick[i] = 0;
            };
            if done {
                break;
            }
        }
    }
    let index: HashMap<(usize, Vec<usize>), usize> = sections
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let group = u.dom().group();
    let a_total = a.total();
    let b_set = GSet::from_fn(group, sections.len(), |g, i| {
        let (x, sec) = &sections[i];
        let gx = u_set.act(g, *x);
        let gi = group.inv(g);
        let moved: Vec<usize> = fibers[gx]
            .iter()
            .map(|&t| a_total.act(g, sec[slot[s_set.act(gi, t)]]))
            .collect();
        index[&(gx, moved)]
    });
    let structure = GMap::new_unchecked(
        b_set,
        u_set.clone(),
        sections.iter().map(|(x, _)| *x).collect(),
    );
    Ok(DependentProduct {
        slice: SliceObject::new(structure),
        u: u.clone(),
        a: a.clone(),
        fibers,
        slot,
        sections,
        index,
    })
}

/// `Π_u` on a slice morphism `φ: a → a'`: post-composition of sections.
pub fn pi_mor(u: &GMap, phi: &SliceMorphism) -> Result<SliceMorphism> {
    let src = pi_full(u, &phi.src, DEFAULT_MAX_POINTS)?;
    let tgt = pi_full(u, &phi.tgt, DEFAULT_MAX_POINTS)?;
    let table = (0..src.sections.len())
        .map(|b| {
            let (x, sec) = &src.sections[b];
            let moved: Vec<usize> = sec.iter().map(|&p| phi.map.apply(p)).collect();
            tgt.lookup(*x, &moved).expect("section of the target slice")
        })
        .collect();
    SliceMorphism::new(
        src.slice.clone(),
        tgt.slice.clone(),
        GMap::new_unchecked(src.slice.total().clone(), tgt.slice.total().clone(), table),
    )
}

/// The data of the square relating `Π_u a` to `a` through the counit.
///
/// `P` is the pullback of `Π_u a: B → U` along `u`; `e: P → A` evaluates a
/// section at the fiber point, `ubar: P → B` is the projection, and
/// `a ∘ e = proj_S`.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub product: DependentProduct,
    pub pullback: Pullback,
    pub e: GMap,
    pub ubar: GMap,
}

impl Evaluation {
    pub fn pia(&self) -> &GMap {
        self.product.slice.map()
    }

    /// `Δ_u Π_u a: P → S`.
    pub fn to_base(&self) -> &GMap {
        &self.pullback.left
    }
}

pub fn counit_e(u: &GMap, a: &SliceObject) -> Result<Evaluation> {
    counit_e_with_limit(u, a, DEFAULT_MAX_POINTS)
}

pub fn counit_e_with_limit(u: &GMap, a: &SliceObject, bound: usize) -> Result<Evaluation> {
    let product = pi_full(u, a, bound)?;
    let pb = pullback_with_limit(u, product.slice.map(), bound)?;
    let e_table = pb
        .points()
        .iter()
        .map(|&(s, b)| product.evaluate(b, s))
        .collect();
    let e = GMap::new_unchecked(pb.apex.clone(), a.total().clone(), e_table);
    let ubar = pb.right.clone();
    Ok(Evaluation {
        product,
        pullback: pb,
        e,
        ubar,
    })
}

/// `η: a → Δ_u Σ_u a`, over `S`.
pub fn sigma_delta_unit(u: &GMap, a: &SliceObject) -> Result<SliceMorphism> {
    let sa = sigma(u, a)?;
    let pb = delta_pullback(u, &sa)?;
    let table = a
        .total()
        .points()
        .map(|p| pb.index(a.map().apply(p), p).expect("diagonal point"))
        .collect();
    SliceMorphism::new(
        a.clone(),
        SliceObject::new(pb.left.clone()),
        GMap::new_unchecked(a.total().clone(), pb.apex.clone(), table),
    )
}

/// `ε: Σ_u Δ_u b → b`, over `U`.
pub fn sigma_delta_counit(u: &GMap, b: &SliceObject) -> Result<SliceMorphism> {
    let pb = delta_pullback(u, b)?;
    let src = sigma(u, &SliceObject::new(pb.left.clone()))?;
    SliceMorphism::new(src, b.clone(), pb.right.clone())
}

/// `η: b → Π_u Δ_u b`, over `U`: `y ↦ (s ↦ (s, y))`.
pub fn delta_pi_unit(u: &GMap, b: &SliceObject) -> Result<SliceMorphism> {
    let pb = delta_pullback(u, b)?;
    let db = SliceObject::new(pb.left.clone());
    let prod = pi_full(u, &db, DEFAULT_MAX_POINTS)?;
    let table = b
        .total()
        .points()
        .map(|y| {
            let x = b.map().apply(y);
            let sec: Vec<usize> = prod
                .fiber(x)
                .iter()
                .map(|&s| pb.index(s, y).expect("fiber point"))
                .collect();
            prod.lookup(x, &sec).expect("constant section")
        })
        .collect();
    SliceMorphism::new(
        b.clone(),
        prod.slice.clone(),
        GMap::new_unchecked(b.total().clone(), prod.slice.total().clone(), table),
    )
}

/// `ε = e: Δ_u Π_u a → a`, over `S`.
pub fn delta_pi_counit(u: &GMap, a: &SliceObject) -> Result<SliceMorphism> {
    let ev = counit_e(u, a)?;
    SliceMorphism::new(SliceObject::new(ev.pullback.left.clone()), a.clone(), ev.e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleOutcome {
    pub identity: &'static str,
    pub sample: usize,
    pub passed: bool,
    pub detail: Option<String>,
}

/// Checks the four triangle identities of `Σ_u ⊣ Δ_u ⊣ Π_u`.
///
/// `over_s` are slices over the domain of `u`, `over_u` slices over its codomain.
pub fn check_adjunction_triangles(
    u: &GMap,
    over_s: &[SliceObject],
    over_u: &[SliceObject],
) -> Vec<TriangleOutcome> {
    fn outcome(identity: &'static str, sample: usize, r: Result<SliceMorphism>) -> TriangleOutcome {
        match r {
            Ok(m) if m.map.is_identity() => TriangleOutcome {
                identity,
                sample,
                passed: true,
                detail: None,
            },
            Ok(m) => TriangleOutcome {
                identity,
                sample,
                passed: false,
                detail: Some(format!("composite is {:?}", m.map.table())),
            },
            Err(e) => TriangleOutcome {
                identity,
                sample,
                passed: false,
                detail: Some(e.to_string()),
            },
        }
    }
    let mut out = Vec::new();
    for (i, a) in over_s.iter().enumerate() {
        // ε_{Σa} ∘ Σ(η_a) = 1
        let r = (|| {
            let eta = sigma_delta_unit(u, a)?;
            let s_eta = sigma_mor(u, &eta)?;
            let eps = sigma_delta_counit(u, &sigma(u, a)?)?;
            s_eta.then(&eps)
        })();
        out.push(outcome("sigma-delta: counit after sigma(unit)", i, r));
        // Π(ε_a) ∘ η_{Πa} = 1
        let r = (|| {
            let pa = pi(u, a)?;
            let eta = delta_pi_unit(u, &pa)?;
            let eps = delta_pi_counit(u, a)?;
            eta.then(&pi_mor(u, &eps)?)
        })();
        out.push(outcome("delta-pi: pi(counit) after unit", i, r));
    }
    for (i, b) in over_u.iter().enumerate() {
        // Δ(ε_b) ∘ η_{Δb} = 1
        let r = (|| {
            let db = delta(u, b)?;
            let eta = sigma_delta_unit(u, &db)?;
            let eps = sigma_delta_counit(u, b)?;
            eta.then(&delta_mor(u, &eps)?)
        })();
        out.push(outcome("sigma-delta: delta(counit) after unit", i, r));
        // ε_{Δb} ∘ Δ(η_b) = 1
        let r = (|| {
            let eta = delta_pi_unit(u, b)?;
            let d_eta = delta_mor(u, &eta)?;
            let eps = delta_pi_counit(u, &delta(u, b)?)?;
            d_eta.then(&eps)
        })();
        out.push(outcome("delta-pi: counit after delta(unit)", i, r));
    }
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::finact::iso::{canonical_form, iso_gsets, slice_iso};
    use crate::finact::limits::{coproduct, initial};
    use crate::group::FiniteGroup;

    fn setup() -> (Arc<FiniteGroup>, GSet, GSet) {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let f = GSet::cosets(g.clone(), &g.trivial_subgroup());
        let pt = GSet::terminal(g.clone());
        (g, f, pt)
    }

    /// F + F over F via the identities.
    fn doubled(f: &GSet) -> SliceObject {
        let c = coproduct(f, f).unwrap();
        let id = GMap::identity(f);
        SliceObject::new(c.copair(&id, &id).unwrap())
    }

    #[test]
    fn sigma_examples() {
        let (_, f, pt) = setup();
        let a = SliceObject::identity(&f);
        assert_eq!(sigma(&GMap::identity(&f), &a).unwrap(), a);
        let bang = GMap::to_terminal(&f);
        assert_eq!(sigma(&bang, &a).unwrap().map(), &bang);
        let _ = pt;
    }

    #[test]
    fn delta_examples() {
        let (g, f, pt) = setup();
        let bang = GMap::to_terminal(&f);
        let d = delta(&bang, &SliceObject::identity(&pt)).unwrap();
        assert!(slice_iso(&d, &SliceObject::identity(&f)).is_some());
        let zero = GMap::from_initial(&f);
        let d0 = delta(&zero, &doubled(&f)).unwrap();
        assert_eq!(d0.total().size(), 0);
        assert_eq!(d0.base(), &initial(&g));
    }

    #[test]
    fn pi_of_doubled_free_set() {
        // Fiber of F → pt is {0, 1}; each point has two preimages in F + F,
        // so there are 2·2 = 4 sections. The swap fixes the two "diagonal"
        // sections (0,1) and (2,3), and exchanges (0,3) with (2,1).
        let (g, f, pt) = setup();
        let bang = GMap::to_terminal(&f);
        let p = pi_full(&bang, &doubled(&f), 1000).unwrap();
        assert_eq!(p.slice.total().size(), 4);
        let expected = {
            let two = coproduct(&pt, &pt).unwrap().sum;
            coproduct(&two, &f).unwrap().sum
        };
        assert!(iso_gsets(p.slice.total(), &expected).is_some());
        assert_eq!(canonical_form(p.slice.total()), canonical_form(&expected));
        let _ = g;
    }

    #[test]
    fn pi_of_identity_is_identity() {
        let (_, f, pt) = setup();
        let bang = GMap::to_terminal(&f);
        let p = pi(&bang, &SliceObject::identity(&f)).unwrap();
        assert!(slice_iso(&p, &SliceObject::identity(&pt)).is_some());
        let id = GMap::identity(&f);
        let a = doubled(&f);
        assert!(slice_iso(&pi(&id, &a).unwrap(), &a).is_some());
    }

    #[test]
    fn counit_square_commutes_and_is_surjective() {
        let (_, f, _) = setup();
        let bang = GMap::to_terminal(&f);
        let a = doubled(&f);
        let ev = counit_e(&bang, &a).unwrap();
        assert_eq!(a.map().compose(&ev.e).unwrap().table(), ev.to_base().table());
        assert!(ev.e.is_surjective());
        let id = GMap::identity(&f);
        assert!(counit_e(&id, &a).unwrap().e.is_iso());
    }

    #[test]
    fn pi_guard_trips() {
        let (_, f, _) = setup();
        let bang = GMap::to_terminal(&f);
        let err = pi_with_limit(&bang, &doubled(&f), 3).unwrap_err();
        assert!(matches!(err, crate::error::Error::ResourceLimit { .. }));
    }

    #[test]
    fn base_mismatch() {
        let (_, f, pt) = setup();
        let bang = GMap::to_terminal(&f);
        assert!(sigma(&bang, &SliceObject::identity(&pt)).is_err());
        assert!(delta(&bang, &SliceObject::identity(&f)).is_err());
        assert!(pi(&bang, &SliceObject::identity(&pt)).is_err());
    }

    #[test]
    fn triangles_hold() {
        let (_, f, pt) = setup();
        let bang = GMap::to_terminal(&f);
        let over_s = vec![doubled(&f), SliceObject::identity(&f), SliceObject::empty(&f)];
        let two = coproduct(&pt, &f).unwrap();
        let over_u = vec![SliceObject::identity(&pt), SliceObject::new(GMap::to_terminal(&two.sum))];
        let report = check_adjunction_triangles(&bang, &over_s, &over_u);
        assert_eq!(report.len(), 10);
        assert!(report.iter().all(|o| o.passed), "{report:?}");
        let id = GMap::identity(&f);
        assert!(check_adjunction_triangles(&id, &over_s, &[doubled(&f)]).iter().all(|o| o.passed));
    }
}
