use std::sync::Arc;

use super::*;
use crate::calib::MorphismClass;
use crate::finact::{
    canonical_form, codiagonal, coproduct, slice_canonical_form, slice_iso, terminal, GMap, GSet,
    SliceObject,
};
use crate::group::FiniteGroup;
use crate::sample::Sampler;
use crate::span::compose_spans;

fn all() -> MorphismClass {
    MorphismClass::all()
}

fn trivial() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::trivial())
}

fn c2() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(2).unwrap())
}

fn plain(g: &Arc<FiniteGroup>, n: usize) -> GSet {
    GSet::new(g.clone(), n, vec![(0..n).collect()]).unwrap()
}

fn plain_map(dom: &GSet, cod: &GSet, table: Vec<usize>) -> GMap {
    GMap::new(dom.clone(), cod.clone(), table).unwrap()
}

/// The same polynomial with the group action forgotten.
fn forget(p: &Polynomial, g: &Arc<FiniteGroup>) -> Polynomial {
    let f = |m: &GMap| plain_map(&plain(g, m.dom().size()), &plain(g, m.cod().size()), m.table().to_vec());
    Polynomial::new(f(p.r()), f(p.n()), f(p.t())).unwrap()
}

#[test]
fn sum_of_products_anchors() {
    let g = trivial();
    let (one, two) = (plain(&g, 1), plain(&g, 2));
    let to_one = GMap::to_terminal(&two);
    let p = Polynomial::new(to_one.clone(), to_one.clone(), GMap::identity(&one)).unwrap();
    assert_eq!(eval_semiring(&p, &[3], &Naturals).unwrap(), vec![9]);
    let p = Polynomial::new(to_one.clone(), GMap::identity(&two), to_one).unwrap();
    assert_eq!(eval_semiring(&p, &[3], &Naturals).unwrap(), vec![6]);
    let id = Polynomial::identity(&two);
    assert_eq!(eval_semiring(&id, &[4, 7], &Naturals).unwrap(), vec![4, 7]);
    assert_eq!(eval_semiring(&id, &[true, false], &Booleans).unwrap(), vec![true, false]);
    assert!(eval_semiring(&Polynomial::identity(&terminal(&c2())), &[1], &Naturals).is_err());
}

#[test]
fn distribute_anchor_over_c2() {
    let g = c2();
    let f = GSet::cosets(g.clone(), &g.trivial_subgroup());
    let pt = terminal(&g);
    let u = GMap::to_terminal(&f);
    let (_, nabla) = codiagonal(&f).unwrap();
    let d = distribute(&all(), &all(), &u, &nabla).unwrap();
    assert_eq!(d.pia().dom().size(), 4);
    let expected = coproduct(&coproduct(&pt, &pt).unwrap().sum, &f).unwrap().sum;
    assert_eq!(canonical_form(d.pia().dom()), canonical_form(&expected));
    let probe = SliceObject::identity(nabla.dom());
    let c = d.comparison(&probe).unwrap();
    assert!(c.map.is_iso());

    let id = distribute(&all(), &all(), &GMap::identity(&f), &nabla).unwrap();
    assert_eq!(slice_canonical_form(&SliceObject::new(id.pia().clone())), slice_canonical_form(&SliceObject::new(nabla.clone())));
    let trivial_a = distribute(&all(), &all(), &u, &GMap::identity(&f)).unwrap();
    assert!(trivial_a.pia().is_iso());
    assert!(distribute(&MorphismClass::injective(), &all(), &u, &nabla).is_err());
}

#[test]
fn distributive_comparison_is_an_iso_and_natural() {
    for g in [c2(), Arc::new(FiniteGroup::symmetric(3).unwrap())] {
        let mut s = Sampler::new(g.clone(), 11);
        for _ in 0..25 {
            let uu = s.gset(3);
            let u = s.map_into(&uu, 3);
            let a = s.map_into(u.dom(), 3);
            let d = distribute(&all(), &all(), &u, &a).unwrap();
            let c1 = s.slice_over(a.dom(), 3);
            let c2 = s.slice_over(a.dom(), 3);
            let phi1 = d.comparison(&c1).unwrap();
            assert!(phi1.map.is_iso());
            assert_eq!(phi1.tgt, d.rhs(&c1).unwrap());
            assert_eq!(phi1.src, d.lhs(&c1).unwrap());
            let phi2 = d.comparison(&c2).unwrap();
            for m in crate::finact::equivariant_maps(c1.total(), c2.total(), &|x, y| c1.map().apply(x) == c2.map().apply(y), 1000).unwrap() {
                let m = crate::finact::SliceMorphism::new(c1.clone(), c2.clone(), m).unwrap();
                let left = crate::finact::pi_mor(&u, &crate::finact::sigma_mor(&a, &m).unwrap()).unwrap();
                let right = crate::finact::sigma_mor(
                    d.pia(),
                    &crate::finact::pi_mor(d.ubar(), &crate::finact::delta_mor(d.e(), &m).unwrap()).unwrap(),
                )
                .unwrap();
                assert_eq!(left.then(&phi2).unwrap().map, phi1.then(&right).unwrap().map);
            }
        }
    }
}

#[test]
fn span_of_spans_round_trip() {
    let g = c2();
    let mut s = Sampler::new(g.clone(), 12);
    for _ in 0..40 {
        let x = s.gset(3);
        let y = s.gset(3);
        let p = s.polynomial(&x, &y, 4);
        let ss = poly_to_spanspan(&p);
        assert_eq!(spanspan_to_poly(&ss).unwrap(), p);
        assert_eq!(poly_to_spanspan(&spanspan_to_poly(&ss).unwrap()), ss);
    }
    let x = s.nonempty_gset(3);
    let id = poly_to_spanspan(&Polynomial::identity(&x));
    assert!(id.to_src.left().is_identity() && id.to_src.right().is_identity());
    let bent = SpanOfSpans::new(x.clone(), id.to_src.clone(), crate::span::Span::new(s.relabel(&x), GMap::identity(&x)).unwrap());
    if let Ok(bent) = bent {
        assert!(bent.to_tgt.left().is_identity() || spanspan_to_poly(&bent).is_err());
    }
}

#[test]
fn two_cells_correspond() {
    let g = c2();
    let mut s = Sampler::new(g.clone(), 13);
    let mut nonempty = 0;
    for _ in 0..30 {
        let x = s.gset(2);
        let y = s.gset(2);
        let p = s.polynomial(&x, &y, 3);
        let q = s.polynomial(&x, &y, 3);
        let c = check_cell_correspondence(&p, &q, 100_000).unwrap();
        assert!(c.bijective && c.round_trips, "{c:?}");
        nonempty += usize::from(c.poly_side > 0);
        let id = PolyMorphism::identity(&p);
        assert!(PolyMorphism::new(id.src.clone(), id.tgt.clone(), id.g.clone(), id.ell.clone()).is_ok());
        assert_eq!(untranslate_2cell(&translate_2cell(&id).unwrap()).unwrap(), id);
    }
    assert!(nonempty > 5);
}

#[test]
fn composition_units_and_spans() {
    let g = c2();
    let mut s = Sampler::new(g.clone(), 14);
    for _ in 0..20 {
        let x = s.gset(3);
        let y = s.gset(3);
        let p = s.polynomial(&x, &y, 4);
        let left = compose_poly(&all(), &all(), &Polynomial::identity(&x), &p).unwrap();
        let right = compose_poly(&all(), &all(), &p, &Polynomial::identity(&y)).unwrap();
        assert!(poly_iso(&left.poly, &p).unwrap().is_some());
        assert!(poly_iso(&right.poly, &p).unwrap().is_some());

        let z = s.gset(3);
        let a = s.span(&x, &y, 4);
        let b = s.span(&y, &z, 4);
        let via_poly = compose_poly(&all(), &all(), &Polynomial::from_span(&a), &Polynomial::from_span(&b)).unwrap();
        assert!(via_poly.transcript.iter().all(|st| st.rule != "distribute"));
        let spans = Polynomial::from_span(&compose_spans(&a, &b).unwrap());
        assert!(poly_iso(&via_poly.poly, &spans).unwrap().is_some());
    }
}

#[test]
fn composition_matches_semantics_over_c2() {
    let g = c2();
    let mut s = Sampler::new(g.clone(), 15);
    for _ in 0..20 {
        let x = s.gset(2);
        let y = s.gset(3);
        let z = s.gset(2);
        let p = s.polynomial(&x, &y, 2);
        let q = s.polynomial(&y, &z, 2);
        let c = compose_poly(&all(), &all(), &p, &q).unwrap();
        assert!(c.transcript.len() <= DEFAULT_STEP_CAP);
        for _ in 0..3 {
            let probe = s.slice_over(&x, 2);
            let direct = PolyExpr::of_polynomial(&c.poly).apply(&probe).unwrap();
            let stepwise = PolyExpr::of_polynomial(&q).apply(&PolyExpr::of_polynomial(&p).apply(&probe).unwrap()).unwrap();
            assert!(slice_iso(&direct, &stepwise).is_some());
        }
        let forgotten = compose_poly(&all(), &all(), &forget(&p, &trivial()), &forget(&q, &trivial())).unwrap();
        assert!(poly_iso(&forgotten.poly, &forget(&c.poly, &trivial())).unwrap().is_some());
    }
}

#[test]
fn composition_matches_the_oracle() {
    let g = trivial();
    let mut s = Sampler::new(g.clone(), 16);
    let mut nat = crate::report::CheckOutcome::new("naturals");
    let mut boo = crate::report::CheckOutcome::new("booleans");
    for _ in 0..40 {
        let x = s.gset(3);
        let y = s.gset(3);
        let z = s.gset(3);
        let p = s.polynomial(&x, &y, 4);
        let q = s.polynomial(&y, &z, 4);
        let ins: Vec<Vec<u64>> = (0..3).map(|k| (0..x.size() as u64).map(|i| (i + k) % 4).collect()).collect();
        check_poly_oracle(&all(), &all(), &p, &q, &ins, &Naturals, &mut nat);
        let bins: Vec<Vec<bool>> = (0..3).map(|k| (0..x.size()).map(|i| (i + k) % 2 == 0).collect()).collect();
        check_poly_oracle(&all(), &all(), &p, &q, &bins, &Booleans, &mut boo);
    }
    assert!(nat.passed() && boo.passed(), "{nat:?} {boo:?}");
}

#[test]
fn composition_is_associative_up_to_iso() {
    let g = c2();
    let mut s = Sampler::new(g.clone(), 17);
    for _ in 0..10 {
        let w = s.gset(2);
        let x = s.gset(2);
        let y = s.gset(2);
        let z = s.gset(2);
        let p = s.polynomial(&w, &x, 2);
        let q = s.polynomial(&x, &y, 2);
        let r = s.polynomial(&y, &z, 2);
        let pq = compose_poly(&all(), &all(), &p, &q).unwrap().poly;
        let qr = compose_poly(&all(), &all(), &q, &r).unwrap().poly;
        let a = compose_poly(&all(), &all(), &pq, &r).unwrap().poly;
        let b = compose_poly(&all(), &all(), &p, &qr).unwrap().poly;
        assert!(poly_iso(&a, &b).unwrap().is_some());
    }
}

#[test]
fn words_and_errors() {
    let g = c2();
    let f = GSet::cosets(g.clone(), &g.trivial_subgroup());
    let pt = terminal(&g);
    let bang = GMap::to_terminal(&f);
    assert!(PolyExpr::new(f.clone(), vec![Gen::Sigma(bang.clone()), Gen::Sigma(bang.clone())]).is_err());
    let w = PolyExpr::new(pt.clone(), vec![Gen::Delta(bang.clone()), Gen::Sigma(bang.clone())]).unwrap();
    assert!(w.is_normal());
    assert_eq!(w.to_string(), "Delta[1->2] ; Sigma[2->1]");
    let p = Polynomial::from_span(&crate::span::Span::new(bang.clone(), bang.clone()).unwrap());
    let q = Polynomial::identity(&f);
    assert!(compose_poly(&all(), &all(), &p, &q).is_err());
    let pp = compose_poly(&all(), &all(), &p, &p).unwrap();
    assert_eq!(pp.poly.exponent().size(), 4);
    assert!(Polynomial::in_classes(&MorphismClass::injective(), &all(), bang.clone(), bang.clone(), GMap::identity(&pt)).is_err());
    let long = PolyExpr::of_polynomial(&p).then(&PolyExpr::of_polynomial(&p)).unwrap();
    assert!(matches!(normalize(&all(), &all(), &long, 1), Err(crate::Error::RewriteDiverged(1))));
}
