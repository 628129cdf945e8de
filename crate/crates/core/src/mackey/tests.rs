use std::sync::Arc;

use super::*;
use crate::completion::{extend_to_spans, Slice};
use crate::finact::{product, terminal, GMap, GSet, SliceObject};
use crate::group::FiniteGroup;
use crate::report::CheckOutcome;
use crate::sample::Sampler;
use crate::span::{compose_spans, Span};

fn c2() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(2).unwrap())
}

fn s3() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::symmetric(3).unwrap())
}

fn free(g: &Arc<FiniteGroup>) -> GSet {
    GSet::cosets(g.clone(), &g.trivial_subgroup())
}

fn all() -> MorphismClass {
    MorphismClass::all()
}

#[test]
fn fixed_point_anchors() {
    let g = c2();
    let pt = terminal(&g);
    let bang = GMap::to_terminal(&free(&g));
    let p = Span::new(bang.clone(), bang).unwrap();
    let m = FixedPointMackey::naturals(g.clone());
    assert_eq!(m.dim(&pt), 1);
    let once = eval_span(&m, &all(), &p).unwrap();
    assert_eq!(once.apply(&[5]).unwrap(), vec![10]);
    let pp = compose_spans(&p, &p).unwrap();
    assert_eq!(pp.apex().size(), 4);
    assert_eq!(eval_span(&m, &all(), &pp).unwrap().apply(&[5]).unwrap(), vec![20]);
    assert_eq!(eval_span(&m, &all(), &crate::span::identity_span(&pt)).unwrap(), NatMatrix::identity(1));
    let b = BurnsideMackey::new(g.clone());
    let v = eval_span(&b, &all(), &p).unwrap();
    let basis = atoms(&pt);
    let point = vectorize(&pt, &SliceObject::identity(&pt)).unwrap();
    let image = v.apply(&point).unwrap();
    assert_eq!(realize_vector(&pt, &image).unwrap().total().size(), 2);
    assert_eq!(basis.len(), 2);
    assert_eq!(image.iter().sum::<u64>(), 1);
}

#[test]
fn fixed_point_with_permuted_coordinates() {
    let g = c2();
    let m = FixedPointMackey::new(free(&g));
    let pt = terminal(&g);
    let f = free(&g);
    // ℕ² with the swap: fixed vectors are (c, c)
    assert_eq!(m.dim(&pt), 1);
    assert_eq!(m.dim(&f), 2);
    let table = m.function(&f, &[2, 3]).unwrap();
    assert_eq!(table, vec![vec![2, 3], vec![3, 2]]);
    assert_eq!(m.decompose(&f, &table).unwrap(), vec![2, 3]);
    assert!(m.decompose(&f, &[vec![1, 0], vec![1, 0]]).is_err());
    let tr = m.tr(&GMap::to_terminal(&f)).unwrap();
    assert_eq!(tr.apply(&[2, 3]).unwrap(), vec![5]);
}

#[test]
fn functoriality_and_double_cosets() {
    for g in [c2(), s3()] {
        let mut s = Sampler::new(g.clone(), 21);
        let b = BurnsideMackey::new(g.clone());
        let m = FixedPointMackey::new(s.nonempty_gset(3));
        let mut outs: Vec<CheckOutcome> = (0..6).map(|i| CheckOutcome::new(format!("c{i}"))).collect();
        for _ in 0..20 {
            let (x, y, z) = (s.gset(3), s.gset(3), s.gset(3));
            let p = s.span(&x, &y, 4);
            let q = s.span(&y, &z, 4);
            check_functoriality(&b, &all(), &p, &q, &mut outs[0]);
            check_functoriality(&m, &all(), &p, &q, &mut outs[1]);
            let u = s.gset(3);
            let f = s.map_into(&u, 4);
            let h = s.map_into(&u, 4);
            check_double_coset(&b, &f, &h, &mut outs[2]);
            check_double_coset(&m, &f, &h, &mut outs[3]);
            let k = s.map_into(f.dom(), 3);
            check_res_tr_functorial(&b, &k, &f, &mut outs[4]);
            check_res_tr_functorial(&m, &k, &f, &mut outs[5]);
        }
        for o in &outs {
            assert!(o.passed() && o.checked == 20, "{o:?}");
        }
    }
}

#[test]
fn additivity() {
    let g = c2();
    let f = free(&g);
    let pt = terminal(&g);
    assert_eq!(atoms(&coproduct(&f, &pt).unwrap().sum).len(), atoms(&f).len() + atoms(&pt).len());
    let mut out = CheckOutcome::new("additivity");
    let b = BurnsideMackey::new(g.clone());
    let m = FixedPointMackey::naturals(g.clone());
    check_additivity(&b, &f, &pt, &mut out);
    check_additivity(&m, &f, &pt, &mut out);
    check_additivity(&b, &f, &GSet::initial(g.clone()), &mut out);
    let mut s = Sampler::new(s3(), 22);
    let b3 = BurnsideMackey::new(s3());
    for _ in 0..5 {
        let (x, y) = (s.gset(4), s.gset(4));
        check_additivity(&b3, &x, &y, &mut out);
    }
    assert!(out.passed() && out.checked == 8, "{out:?}");
}

#[test]
fn burnside_tables() {
    let t = burnside_table(&Arc::new(FiniteGroup::trivial())).unwrap();
    assert_eq!(t.products, vec![vec![vec![1]]]);
    let t = burnside_table(&c2()).unwrap();
    assert_eq!(t.atoms, vec!["[pt]", "[F]"]);
    assert_eq!(t.products[0][0], vec![1, 0]);
    assert_eq!(t.products[0][1], vec![0, 1]);
    assert_eq!(t.products[1][1], vec![0, 2]);
    assert_eq!(t.render_element(&t.products[1][1]), "2[F]");
    assert_eq!(t, burnside_table_double_cosets(&c2()));
    let t3 = burnside_table(&s3()).unwrap();
    assert_eq!(t3.atoms.len(), 4);
    assert_eq!(t3, burnside_table_double_cosets(&s3()));
    let n = t3.atoms.len();
    for i in 0..n {
        assert_eq!(t3.products[0][i], (0..n).map(|k| u64::from(k == i)).collect::<Vec<_>>());
        for j in 0..n {
            assert_eq!(t3.products[i][j], t3.products[j][i]);
        }
    }
    // associativity through the structure constants
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut left = vec![0; n];
                let mut right = vec![0; n];
                for (m, &c) in t3.products[i][j].iter().enumerate() {
                    for (l, &d) in t3.products[m][k].iter().enumerate() {
                        left[l] += c * d;
                    }
                }
                for (m, &c) in t3.products[j][k].iter().enumerate() {
                    for (l, &d) in t3.products[i][m].iter().enumerate() {
                        right[l] += c * d;
                    }
                }
                assert_eq!(left, right);
            }
        }
    }
    assert!(t3.to_text().contains("[pt]"));
}

#[test]
fn burnside_matches_span_extension() {
    let g = c2();
    let mut s = Sampler::new(g.clone(), 23);
    let b = BurnsideMackey::new(g.clone());
    for _ in 0..20 {
        let (x, y) = (s.gset(3), s.gset(3));
        let p = s.span(&x, &y, 4);
        let probe = s.slice_over(&x, 4);
        let via_matrix = eval_span(&b, &all(), &p).unwrap().apply(&vectorize(&x, &probe).unwrap()).unwrap();
        let via_slices = extend_to_spans(&Slice::all(), &p.reversed(), &probe).unwrap();
        assert_eq!(via_matrix, vectorize(&y, &via_slices).unwrap());
        let relabel = s.relabel(p.apex());
        let q = Span::new(p.left().compose(&relabel).unwrap(), p.right().compose(&relabel).unwrap()).unwrap();
        let mut out = CheckOutcome::new("iso invariance");
        check_span_iso_invariance(&b, &all(), &p, &q, &mut out);
        assert!(out.passed() && out.checked == 1);
    }
}

#[test]
fn box_products() {
    let g = Arc::new(FiniteGroup::trivial());
    let pt = terminal(&g);
    let b = BurnsideMackey::new(g.clone());
    let pp = product(&pt, &pt).unwrap();
    let s = SliceObject::identity(&pp.prod);
    assert_eq!(box_product(&b, &b, &pp, &s, &[3], &[4]).unwrap().get(0, 0), 12);

    let g = c2();
    let mut sm = Sampler::new(g.clone(), 24);
    let b = BurnsideMackey::new(g.clone());
    let m = FixedPointMackey::naturals(g.clone());
    for _ in 0..10 {
        let (x, y) = (sm.nonempty_gset(3), sm.nonempty_gset(3));
        let pxy = product(&x, &y).unwrap();
        let pyx = product(&y, &x).unwrap();
        let s = sm.slice_over(&pxy.prod, 4);
        let swap = pyx.pair(&pxy.pr2, &pxy.pr1).unwrap();
        let s_swapped = SliceObject::new(swap.compose(s.map()).unwrap());
        let mv: Vec<u64> = (0..b.dim(&x) as u64).collect();
        let mv2: Vec<u64> = (0..b.dim(&x) as u64).map(|i| i % 2).collect();
        let nv: Vec<u64> = (0..m.dim(&y) as u64).map(|i| i + 1).collect();
        let mn = box_product(&b, &m, &pxy, &s, &mv, &nv).unwrap();
        let nm = box_product(&m, &b, &pyx, &s_swapped, &nv, &mv).unwrap();
        for i in 0..mn.rows {
            for j in 0..mn.cols {
                assert_eq!(mn.get(i, j), nm.get(j, i));
            }
        }
        let sum: Vec<u64> = mv.iter().zip(&mv2).map(|(a, c)| a + c).collect();
        let lhs = box_product(&b, &m, &pxy, &s, &sum, &nv).unwrap();
        let rhs = mn.add(&box_product(&b, &m, &pxy, &s, &mv2, &nv).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        // pairing with the unit of the Burnside functor over a point recovers M
        let pt = terminal(&g);
        let xpt = product(&x, &pt).unwrap();
        let over = sm.slice_over(&xpt.prod, 4);
        let unit = vectorize(&pt, &SliceObject::identity(&pt)).unwrap();
        let mx: Vec<u64> = (1..=m.dim(&x) as u64).collect();
        let paired = box_product(&m, &b, &xpt, &over, &mx, &unit).unwrap();
        let restricted = m.res(&xpt.pr1.compose(over.map()).unwrap()).unwrap().apply(&mx).unwrap();
        let unit_here = vectorize(over.total(), &SliceObject::identity(over.total())).unwrap();
        for (j, &k) in unit_here.iter().enumerate() {
            let col = paired.column(j);
            let expected: Vec<u64> = restricted.iter().map(|&r| r * k).collect();
            assert_eq!(col, expected);
        }
    }
}
