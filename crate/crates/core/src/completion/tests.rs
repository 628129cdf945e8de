use std::sync::Arc;

use super::*;
use crate::calib::MorphismClass;
use crate::finact::{
    canonical_form, coproduct, pi, product, slice_canonical_form, terminal, GMap, GSet,
    SliceObject,
};
use crate::group::FiniteGroup;
use crate::sample::Sampler;
use crate::span::Span;

fn c2() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(2).unwrap())
}

fn free(g: &Arc<FiniteGroup>) -> GSet {
    GSet::cosets(g.clone(), &g.trivial_subgroup())
}

fn slice_family(s: &mut Sampler, u: &GSet) -> CompletionObject<SliceObject> {
    let m = s.map_into(u, 4);
    let x = s.slice_over(m.dom(), 4);
    CompletionObject { u: m, x }
}

fn terminal_family(s: &mut Sampler, u: &GSet) -> CompletionObject<GSet> {
    let m = s.map_into(u, 5);
    CompletionObject { x: m.dom().clone(), u: m }
}

fn representable_family(s: &mut Sampler, u: &GSet, k: &GSet) -> CompletionObject<GMap> {
    let p = product(u, k).unwrap();
    let m = s.map_into(&p.prod, 5);
    CompletionObject {
        u: p.pr1.compose(&m).unwrap(),
        x: p.pr2.compose(&m).unwrap(),
    }
}

#[test]
fn reindex_free_family_along_free_map() {
    let g = c2();
    let f = free(&g);
    let pt = terminal(&g);
    let c = Completion::new(Terminal, MorphismClass::all());
    let o = CompletionObject { u: GMap::to_terminal(&f), x: f.clone() };
    let r = c.reindex(&GMap::to_terminal(&f), &o).unwrap();
    let ff = coproduct(&f, &f).unwrap().sum;
    assert_eq!(canonical_form(r.u.dom()), canonical_form(&ff));
    assert_eq!(r.u.cod(), &f);
    let id = c.reindex(&GMap::identity(&pt), &o).unwrap();
    assert!(c.find_iso(&id, &o).unwrap().is_some());
    let zero = GSet::initial(g.clone());
    let e = c.reindex(&GMap::from_initial(&pt), &o).unwrap();
    assert_eq!(e.u.dom(), &zero);
}

#[test]
fn pushforward_is_sigma_for_terminal() {
    let g = c2();
    let mut s = Sampler::new(g.clone(), 1);
    let c = Completion::new(Terminal, MorphismClass::all());
    for _ in 0..10 {
        let v = s.gset(4);
        let r = s.map_into(&v, 4);
        let o = terminal_family(&mut s, r.dom());
        let p = c.pushforward(&r, &o).unwrap();
        let sig = crate::finact::sigma(&r, &SliceObject::new(o.u.clone())).unwrap();
        assert_eq!(&p.u, sig.map());
        assert_eq!(c.pushforward(&GMap::identity(o.u.cod()), &o).unwrap(), o);
    }
    assert!(Completion::new(Terminal, MorphismClass::injective())
        .pushforward(&GMap::to_terminal(&free(&g)), &terminal_family(&mut s, &free(&g)))
        .is_err());
}

#[test]
fn hom_bijections_and_naturality() {
    let g = c2();
    let mut s = Sampler::new(g.clone(), 2);
    let c = Completion::new(Slice::all(), MorphismClass::all());
    let mut nontrivial = 0;
    for _ in 0..15 {
        let u = s.nonempty_gset(3);
        let r = s.map_into(&u, 3);
        let o = slice_family(&mut s, r.dom());
        let o2 = slice_family(&mut s, &u);
        let o3 = slice_family(&mut s, &u);
        let b = hom_bijection(&c, &r, &o, &o2).unwrap();
        assert!(b.bijective, "{b:?}");
        nontrivial += usize::from(b.lhs > 0);
        let (_, failed) = check_naturality(&c, &r, &o, &o2, &o3).unwrap();
        assert_eq!(failed, 0);
    }
    assert!(nontrivial > 0);
    let u = s.nonempty_gset(3);
    let o = slice_family(&mut s, &u);
    let o2 = slice_family(&mut s, &u);
    let b = hom_bijection(&c, &GMap::identity(&u), &o, &o2).unwrap();
    assert!(b.bijective && b.lhs == b.rhs);
}

#[test]
fn chevalley_beck_for_all_instances() {
    let g = c2();
    let mut s = Sampler::new(g.clone(), 3);
    let mut t = crate::report::CheckOutcome::new("terminal");
    let mut sl = crate::report::CheckOutcome::new("slice");
    let mut rep = crate::report::CheckOutcome::new("representable");
    let k = coproduct(&free(&g), &terminal(&g)).unwrap().sum;
    let ct = Completion::new(Terminal, MorphismClass::all());
    let cs = Completion::new(Slice::all(), MorphismClass::all());
    let cr = Completion::new(Representable::new(k.clone()), MorphismClass::all());
    for _ in 0..15 {
        let u = s.gset(4);
        let f = s.map_into(&u, 4);
        let gm = s.map_into(&u, 4);
        let a = vec![terminal_family(&mut s, f.dom())];
        check_cb(&ct, &f, &gm, &a, &mut t);
        let a = vec![slice_family(&mut s, f.dom())];
        check_cb(&cs, &f, &gm, &a, &mut sl);
        let a = vec![representable_family(&mut s, f.dom(), &k)];
        check_cb(&cr, &f, &gm, &a, &mut rep);
        assert!(check_sum_cb(&Slice::all(), &f, &gm, &s.slice_over(f.dom(), 4)).unwrap());
        assert!(check_product_cb(&Slice::all(), &f, &gm, &s.slice_over(f.dom(), 3)).unwrap());
    }
    for o in [t, sl, rep] {
        assert!(o.passed() && o.checked == 15, "{o:?}");
    }
}

#[test]
fn monad_laws_and_unit_adjoint() {
    let g = c2();
    let mut s = Sampler::new(g.clone(), 4);
    let c = Completion::new(Slice::all(), MorphismClass::all());
    let mut samples = Vec::new();
    for _ in 0..10 {
        let u = s.gset(3);
        let u1 = s.map_into(&u, 3);
        let u2 = s.map_into(u1.dom(), 3);
        let o = slice_family(&mut s, u2.dom());
        samples.push((u1, u2, o));
        let base = s.gset(3);
        let o = slice_family(&mut s, &base);
        let y = s.slice_over(&base, 3);
        assert!(check_unit_left_adjoint(&c, &o, &y).unwrap());
    }
    for o in check_monad_laws(&c, &samples).unwrap() {
        assert!(o.passed(), "{o:?}");
    }
}

#[test]
fn dual_completion_realizes_products() {
    let g = c2();
    let f = free(&g);
    let pt = terminal(&g);
    let sl = Slice::all();
    let dual = DualCompletion::new(sl.clone(), MorphismClass::all());
    // F + F over F by the identities, as a family along F → pt
    let ff = coproduct(&f, &f).unwrap();
    let a = SliceObject::new(ff.copair(&GMap::identity(&f), &GMap::identity(&f)).unwrap());
    let o = dual.object(GMap::to_terminal(&f), a.clone()).unwrap();
    let p = product_from_family(&sl, &o).unwrap();
    assert_eq!(p.total().size(), 4);
    assert_eq!(p, pi(&o.u, &a).unwrap());
    let rho = dual.unit_rho(&a);
    assert!(sl.find_iso(&product_from_family(&sl, &rho).unwrap(), &a).unwrap().is_some());

    let mut s = Sampler::new(g.clone(), 5);
    for _ in 0..15 {
        let u = s.gset(4);
        let fm = s.map_into(&u, 3);
        let gm = s.map_into(&u, 3);
        let o = terminal_family(&mut s, fm.dom());
        let dt = DualCompletion::new(Terminal, MorphismClass::all());
        let m = dt.mate(&fm, &gm, &o).unwrap();
        assert!(m.w.is_iso());
        let n = dt.hom(&m.src, &m.tgt).unwrap();
        assert!(n.iter().any(|k| k.w == m.w));
    }
    assert_eq!(product_from_family(&sl, &dual.unit_rho(&SliceObject::identity(&pt))).unwrap().total().size(), 1);
}

#[test]
fn span_extension_on_slices() {
    let g = c2();
    let f = free(&g);
    let pt = terminal(&g);
    let bang = GMap::to_terminal(&f);
    let p = Span::new(bang.clone(), bang.clone()).unwrap();
    let sl = Slice::all();
    let out = extend_to_spans(&sl, &p, &SliceObject::identity(&pt)).unwrap();
    assert_eq!(slice_canonical_form(&out), slice_canonical_form(&SliceObject::new(bang)));
    let id = crate::span::identity_span(&pt);
    let y = SliceObject::identity(&pt);
    assert!(sl.find_iso(&extend_to_spans(&sl, &id, &y).unwrap(), &y).unwrap().is_some());

    let mut s = Sampler::new(g.clone(), 6);
    let mut outcome = crate::report::CheckOutcome::new("span functor");
    let mut inv = crate::report::CheckOutcome::new("iso invariance");
    for _ in 0..10 {
        let u = s.gset(3);
        let v = s.gset(3);
        let w = s.gset(3);
        let p = s.span(&u, &v, 4);
        let q = s.span(&v, &w, 4);
        let probes = vec![s.slice_over(&w, 3), s.slice_over(&w, 3)];
        check_span_functor(&sl, &p, &q, &probes, &mut outcome);
        let shuffle = s.relabel(q.apex());
        let q2 = Span::new(q.left().compose(&shuffle).unwrap(), q.right().compose(&shuffle).unwrap()).unwrap();
        check_span_iso_invariance(&sl, &q, &q2, &probes, &mut inv);
    }
    assert!(outcome.passed() && outcome.checked == 20);
    assert!(inv.passed() && inv.checked == 20);
}

#[test]
fn biproducts_and_local_sums() {
    let g = c2();
    let mut s = Sampler::new(g.clone(), 7);
    let sl = Slice::all();
    let ct = Completion::new(Terminal, MorphismClass::all());
    let cs = Completion::new(Slice::all(), MorphismClass::all());
    for _ in 0..6 {
        let u = s.gset(3);
        let v = s.gset(3);
        let base = coproduct(&u, &v).unwrap();
        let over: Vec<_> = (0..3).map(|_| s.slice_over(&base.sum, 4)).collect();
        let pairs: Vec<_> = (0..3).map(|_| (s.slice_over(&u, 3), s.slice_over(&v, 3))).collect();
        for o in check_biproduct_preservation(&sl, &base, &over, &pairs) {
            assert!(o.passed(), "{o:?}");
        }
        let over: Vec<_> = (0..3).map(|_| terminal_family(&mut s, &base.sum)).collect();
        let pairs: Vec<_> = (0..3)
            .map(|_| (terminal_family(&mut s, &u), terminal_family(&mut s, &v)))
            .collect();
        for o in check_biproduct_preservation(&ct, &base, &over, &pairs) {
            assert!(o.passed(), "{o:?}");
        }
        let over: Vec<_> = (0..2).map(|_| slice_family(&mut s, &base.sum)).collect();
        let pairs: Vec<_> = (0..2).map(|_| (slice_family(&mut s, &u), slice_family(&mut s, &v))).collect();
        for o in check_biproduct_preservation(&cs, &base, &over, &pairs) {
            assert!(o.passed(), "{o:?}");
        }
        let a = s.slice_over(&u, 3);
        let b = s.slice_over(&u, 3);
        let z = s.slice_over(&u, 3);
        assert!(check_local_sum(&sl, &u, &a, &b, &z).unwrap());
    }
    let t = Terminal;
    let pt = terminal(&g);
    let base = coproduct(&pt, &pt).unwrap();
    for o in check_biproduct_preservation(&t, &base, &[base.sum.clone()], &[(pt.clone(), pt.clone())]) {
        assert!(o.passed());
    }
}

#[test]
fn double_completion_is_an_indexed_category() {
    let g = c2();
    let mut s = Sampler::new(g.clone(), 8);
    let c = Completion::new(Terminal, MorphismClass::all());
    let cc = Completion::new(c.clone(), MorphismClass::all());
    for _ in 0..6 {
        let u = s.gset(3);
        let outer = s.map_into(&u, 3);
        let inner = terminal_family(&mut s, outer.dom());
        let o = CompletionObject { u: outer, x: inner };
        let r = s.map_into(&u, 3);
        let moved = cc.reindex(&r, &o).unwrap();
        assert_eq!(moved.u.cod(), r.dom());
        let id = cc.identity(&o);
        assert!(cc.compose(&id, &id).unwrap().w.is_identity());
        let flat = c.mu_flatten(&o).unwrap();
        assert_eq!(flat.u.cod(), &u);
    }
}
