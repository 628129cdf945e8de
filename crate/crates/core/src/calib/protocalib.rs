//! Sampled checks of the protocalibration axioms and of compatible pairs.

use super::class::MorphismClass;
use crate::error::{Error, Result};
use crate::finact::{
    automorphisms, codiagonal, coproduct, coproduct_pullback_decompose, iso_gsets, orbit_types,
    pi_with_limit, product_map, pullback, realize_types, sum_map, Coproduct, GMap, GSet,
    SliceObject, DEFAULT_MAX_POINTS,
};
use crate::report::CheckOutcome;
use crate::sample::SampleFamily;

fn show(f: &GMap) -> String {
    format!("{} -> {} {:?}", f.dom().size(), f.cod().size(), f.table())
}

/// The reversed numbering `X' → X`, `i ↦ n-1-i`.
fn reversed(x: &GSet) -> GMap {
    let n = x.size();
    let copy = GSet::from_fn(x.group(), n, |g, i| n - 1 - x.act(g, n - 1 - i));
    GMap::new_unchecked(copy, x.clone(), (0..n).rev().collect())
}

/// An iso from the canonical realization of `x` onto `x`.
fn canonical_iso(x: &GSet) -> GMap {
    let types = orbit_types(x, &|_| Vec::new());
    let (canon, _) = realize_types(x.group(), &types, &[]);
    iso_gsets(&canon, x).expect("a set is isomorphic to its canonical realization")
}

fn all_maps(fam: &SampleFamily) -> Vec<&GMap> {
    let mut v: Vec<&GMap> = fam.maps.iter().collect();
    for (a, b) in fam.chains.iter().chain(&fam.cospans) {
        v.push(a);
        v.push(b);
    }
    v
}

/// Axioms (I), (C), (P) on the samples; (G) holds in any 1-category.
pub fn check_protocalibration(class: &MorphismClass, fam: &SampleFamily) -> Vec<CheckOutcome> {
    let name = class.name();
    let maps = all_maps(fam);

    let mut isos = CheckOutcome::new(format!("{name}: (I) isomorphisms belong"));
    let mut closure = CheckOutcome::new(format!("{name}: (I) closed under isomorphism"));
    for f in &maps {
        for x in [f.dom(), f.cod()] {
            let id = GMap::identity(x);
            isos.record(class.contains(&id), || format!("identity on {} points", x.size()));
            for iso in [reversed(x), canonical_iso(x)] {
                isos.record(class.contains(&iso), || format!("iso {}", show(&iso)));
            }
            if let Ok(autos) = automorphisms(x, 16) {
                for a in autos {
                    isos.record(class.contains(&a), || format!("automorphism {}", show(&a)));
                }
            }
        }
        let before = reversed(f.dom());
        let after = reversed(f.cod()).inverse().expect("iso");
        let moved = after.compose(&f.compose(&before).expect("composable")).expect("composable");
        closure.record(class.contains(f) == class.contains(&moved), || {
            format!("{} vs its conjugate {}", show(f), show(&moved))
        });
        let canon = canonical_iso(f.dom());
        let moved = f.compose(&canon).expect("composable");
        closure.record(class.contains(f) == class.contains(&moved), || {
            format!("{} vs {}", show(f), show(&moved))
        });
    }

    let mut comp = CheckOutcome::new(format!("{name}: (C) composites"));
    for (first, second) in &fam.chains {
        if class.contains(first) && class.contains(second) {
            let c = second.compose(first).expect("chain is composable");
            comp.record(class.contains(&c), || {
                format!("{} then {} gives {}", show(first), show(second), show(&c))
            });
        }
    }

    let mut pb = CheckOutcome::new(format!("{name}: (P) pullbacks"));
    for (f, g) in &fam.cospans {
        let Ok(p) = pullback(f, g) else { continue };
        if class.contains(f) {
            pb.record(class.contains(&p.right), || {
                format!("pullback of {} along {} is {}", show(f), show(g), show(&p.right))
            });
        }
        if class.contains(g) {
            pb.record(class.contains(&p.left), || {
                format!("pullback of {} along {} is {}", show(g), show(f), show(&p.left))
            });
        }
    }

    let g = CheckOutcome::new(format!("{name}: (G) groupoid opfibrations")).with_note(
        "automatic: in a 1-category every morphism is both a groupoid fibration and opfibration",
    );

    let mut out = vec![isos, closure, comp, pb, g];
    if class.closed_under_coproducts() {
        out.push(check_coproduct_closure(class, fam));
    }
    out
}

/// Coprojections, codiagonals, maps out of `0` and sums of members.
pub fn check_coproduct_closure(class: &MorphismClass, fam: &SampleFamily) -> CheckOutcome {
    let mut c = CheckOutcome::new(format!("{}: closed under coproducts", class.name()));
    for (f, g) in &fam.cospans {
        let u = f.dom();
        if let Ok((cp, nabla)) = codiagonal(u) {
            c.record(class.contains(&nabla), || format!("codiagonal on {} points", u.size()));
            c.record(class.contains(&cp.inj1) && class.contains(&cp.inj2), || {
                format!("coprojections of {} points", u.size())
            });
        }
        let bang = GMap::from_initial(u);
        c.record(class.contains(&bang), || format!("0 -> {} points", u.size()));
        if class.contains(f) && class.contains(g) {
            let s = sum_check(class, f, g);
            c.record(s.unwrap_or(false), || format!("{} + {}", show(f), show(g)));
        }
    }
    c
}

fn sum_check(class: &MorphismClass, f: &GMap, g: &GMap) -> Result<bool> {
    let src = coproduct(f.dom(), g.dom())?;
    let tgt = coproduct(f.cod(), g.cod())?;
    Ok(class.contains(&sum_map(f, g, &src, &tgt)?))
}

/// `L ⊆ R` and `Π_r v ∈ R` for `r ∈ L`, `v ∈ R` over the sampled chains.
pub fn check_compatible_pair(
    l: &MorphismClass,
    r: &MorphismClass,
    fam: &SampleFamily,
) -> Vec<CheckOutcome> {
    let tag = format!("({}, {})", l.name(), r.name());
    let mut sub = CheckOutcome::new(format!("{tag}: L contained in R"));
    for f in all_maps(fam) {
        if l.contains(f) {
            sub.record(r.contains(f), || format!("{} is in L but not in R", show(f)));
        }
    }
    let powerful = CheckOutcome::new(format!("{tag}: L consists of powerful maps"))
        .with_note("automatic: every map of finite G-sets has a dependent product");
    let mut pis = CheckOutcome::new(format!("{tag}: dependent products of R along L"));
    for (v, u) in &fam.chains {
        if !(l.contains(u) && r.contains(v)) {
            continue;
        }
        let a = SliceObject::new(v.clone());
        pis.record_result(
            pi_with_limit(u, &a, DEFAULT_MAX_POINTS),
            |p| r.contains(p.map()),
            || format!("Pi along {} of {}", show(u), show(v)),
        );
    }
    vec![sub, powerful, pis]
}

/// `f × f'` stays in the class.
pub fn check_product_closure(class: &MorphismClass, f: &GMap, f2: &GMap) -> bool {
    match product_map(f, f2) {
        Ok((_, _, m)) => class.contains(&m),
        Err(_) => false,
    }
}

/// Restricts `w` over `U+V` to its parts over `U` and over `V`.
pub fn extensivity_comparison(
    class: &MorphismClass,
    base: &Coproduct,
    w: &SliceObject,
) -> Result<(SliceObject, SliceObject)> {
    let d = coproduct_pullback_decompose(w.map(), base)?;
    let (a, b) = (SliceObject::new(d.h), SliceObject::new(d.k));
    if class.contains(w.map()) && !(class.contains(a.map()) && class.contains(b.map())) {
        return Err(Error::ClassViolation {
            class: class.name().to_string(),
            detail: "a restriction of a member left the class".into(),
        });
    }
    Ok((a, b))
}

/// `(a, b) ↦ a + b` over `U+V`.
pub fn inverse_sum(
    class: &MorphismClass,
    base: &Coproduct,
    a: &SliceObject,
    b: &SliceObject,
) -> Result<SliceObject> {
    let src = coproduct(a.total(), b.total())?;
    let s = sum_map(a.map(), b.map(), &src, base)?;
    if class.closed_under_coproducts()
        && class.contains(a.map())
        && class.contains(b.map())
        && !class.contains(&s)
    {
        return Err(Error::ClassViolation {
            class: class.name().to_string(),
            detail: format!("sum {} of members is not a member", show(&s)),
        });
    }
    Ok(SliceObject::new(s))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::finact::slice_iso;
    use crate::group::FiniteGroup;
    use crate::sample::Sampler;

    fn family(seed: u64) -> SampleFamily {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        Sampler::new(g, seed).family(25, 5)
    }

    #[test]
    fn builtin_classes_pass() {
        let fam = family(1);
        for name in MorphismClass::builtin_names() {
            let class = MorphismClass::by_name(name).unwrap();
            for o in check_protocalibration(&class, &fam) {
                assert!(o.passed(), "{name}: {o:?}");
            }
        }
    }

    #[test]
    fn constant_image_has_witness() {
        let fam = family(2);
        let outcomes = check_protocalibration(&MorphismClass::constant_image(), &fam);
        let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed()).collect();
        assert!(!failed.is_empty());
        assert!(failed[0].witness.is_some());
    }

    #[test]
    fn compatible_pairs() {
        let fam = family(3);
        let all = MorphismClass::all();
        let inj = MorphismClass::injective();
        assert!(check_compatible_pair(&all, &all, &fam).iter().all(CheckOutcome::passed));
        assert!(check_compatible_pair(&inj, &all, &fam).iter().all(CheckOutcome::passed));
        let bad = check_compatible_pair(&all, &inj, &fam);
        assert!(!bad[0].passed() && bad[0].witness.is_some());
    }

    #[test]
    fn products_of_members() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let mut s = Sampler::new(g, 4);
        for _ in 0..10 {
            let x = s.gset(4);
            let y = s.gset(4);
            let i = s.injection_into(&x);
            let j = s.injection_into(&y);
            assert!(check_product_closure(&MorphismClass::injective(), &i, &j));
            let p = s.surjection_onto(&x, 2);
            let q = s.surjection_onto(&y, 2);
            assert!(check_product_closure(&MorphismClass::surjective(), &p, &q));
            assert!(check_product_closure(&MorphismClass::isomorphisms(), &GMap::identity(&x), &GMap::identity(&y)));
        }
    }

    #[test]
    fn extensivity_round_trip() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let mut s = Sampler::new(g.clone(), 5);
        let all = MorphismClass::all();
        for _ in 0..20 {
            let u = s.gset(4);
            let v = s.gset(4);
            let base = coproduct(&u, &v).unwrap();
            let w = s.slice_over(&base.sum, 6);
            let (a, b) = extensivity_comparison(&all, &base, &w).unwrap();
            let back = inverse_sum(&all, &base, &a, &b).unwrap();
            assert!(slice_iso(&back, &w).is_some());
            let (a2, b2) = extensivity_comparison(&all, &base, &back).unwrap();
            assert!(slice_iso(&a, &a2).is_some() && slice_iso(&b, &b2).is_some());
        }
        let u = s.gset(4);
        let zero = GSet::initial(g);
        let base = coproduct(&u, &zero).unwrap();
        let w = s.slice_over(&base.sum, 6);
        let (a, b) = extensivity_comparison(&all, &base, &w).unwrap();
        assert_eq!(a.total().size(), w.total().size());
        assert!(b.total().is_empty());
    }
}
