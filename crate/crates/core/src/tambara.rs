//! Tambara functors: restriction, transfer and norm, and evaluation of
//! polynomials as `tr(t) ∘ norm(n) ∘ res(r)`.

use std::fmt::Debug;
use std::sync::Arc;

use crate::calib::MorphismClass;
use crate::error::{boundary, Error, Result};
use crate::finact::{
    coproduct, delta, orbit_types, pi, pullback, realize_types, sigma, slice_canonical_form, GMap, GSet,
    SliceObject,
};
use crate::group::FiniteGroup;
use crate::poly::{compose_poly, distribute, Polynomial, Semiring};
use crate::report::CheckOutcome;

pub trait TambaraFunctor {
    type Value: Clone + Debug + PartialEq;

    fn name(&self) -> String;

    fn zero(&self, x: &GSet) -> Self::Value;

    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;

    /// `res(f): value(B) → value(A)` for `f: A → B`.
    fn res(&self, f: &GMap, v: &Self::Value) -> Result<Self::Value>;

    /// `tr(u): value(A) → value(B)`.
    fn tr(&self, u: &GMap, v: &Self::Value) -> Result<Self::Value>;

    /// `norm(n): value(A) → value(B)`.
    fn norm(&self, n: &GMap, v: &Self::Value) -> Result<Self::Value>;

    fn render(&self, v: &Self::Value) -> String {
        format!("{v:?}")
    }
}

/// `value(X)` = iso classes of slices over `X`, kept as canonical
/// representatives; `tr = Σ`, `res = Δ`, `norm = Π`.
#[derive(Clone, Debug)]
pub struct BurnsideTambara {
    pub group: Arc<FiniteGroup>,
}

impl BurnsideTambara {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        BurnsideTambara { group }
    }

    /// The canonical representative of the iso class of `a`.
    pub fn canonical(&self, a: &SliceObject) -> SliceObject {
        let m = a.map();
        let types = orbit_types(m.dom(), &|p| vec![m.apply(p)]);
        let (_, maps) = realize_types(m.dom().group(), &types, std::slice::from_ref(a.base()));
        SliceObject::new(maps.into_iter().next().expect("one target"))
    }
}

impl TambaraFunctor for BurnsideTambara {
    type Value = SliceObject;

    fn name(&self) -> String {
        format!("burnside[{}]", self.group.name())
    }

    fn zero(&self, x: &GSet) -> SliceObject {
        SliceObject::empty(x)
    }

    fn add(&self, a: &SliceObject, b: &SliceObject) -> Result<SliceObject> {
        if a.base() != b.base() {
            return Err(boundary("adding slices over different bases"));
        }
        let cp = coproduct(a.total(), b.total())?;
        Ok(self.canonical(&SliceObject::new(cp.copair(a.map(), b.map())?)))
    }

    fn res(&self, f: &GMap, v: &SliceObject) -> Result<SliceObject> {
        Ok(self.canonical(&delta(f, v)?))
    }

    fn tr(&self, u: &GMap, v: &SliceObject) -> Result<SliceObject> {
        Ok(self.canonical(&sigma(u, v)?))
    }

    fn norm(&self, n: &GMap, v: &SliceObject) -> Result<SliceObject> {
        Ok(self.canonical(&pi(n, v)?))
    }

    fn render(&self, v: &SliceObject) -> String {
        slice_canonical_form(v)
    }
}

/// `value(X) = R^X` over the trivial group.
#[derive(Clone, Debug)]
pub struct SemiringTambara<R> {
    pub ring: R,
}

impl<R: Semiring> SemiringTambara<R> {
    pub fn new(ring: R) -> Self {
        SemiringTambara { ring }
    }

    fn trivial(&self, f: &GMap) -> Result<()> {
        if f.dom().group().is_trivial() {
            Ok(())
        } else {
            Err(Error::Unsupported("semiring Tambara functors need the trivial group".into()))
        }
    }

    fn fold(&self, f: &GMap, v: &[R::Elem], unit: R::Elem, op: impl Fn(&R::Elem, &R::Elem) -> R::Elem) -> Result<Vec<R::Elem>> {
        self.trivial(f)?;
        if v.len() != f.dom().size() {
            return Err(boundary("value has the wrong length"));
        }
        let mut out = vec![unit; f.cod().size()];
        for (a, x) in v.iter().enumerate() {
            let b = f.apply(a);
            out[b] = op(&out[b], x);
        }
        Ok(out)
    }
}

impl<R: Semiring> TambaraFunctor for SemiringTambara<R> {
    type Value = Vec<R::Elem>;

    fn name(&self) -> String {
        format!("semiring[{}]", self.ring.name())
    }

    fn zero(&self, x: &GSet) -> Vec<R::Elem> {
        vec![self.ring.zero(); x.size()]
    }

    fn add(&self, a: &Vec<R::Elem>, b: &Vec<R::Elem>) -> Result<Vec<R::Elem>> {
        if a.len() != b.len() {
            return Err(boundary("adding values of different lengths"));
        }
        Ok(a.iter().zip(b).map(|(x, y)| self.ring.add(x, y)).collect())
    }

    fn res(&self, f: &GMap, v: &Vec<R::Elem>) -> Result<Vec<R::Elem>> {
        self.trivial(f)?;
        if v.len() != f.cod().size() {
            return Err(boundary("value has the wrong length"));
        }
        Ok(f.table().iter().map(|&b| v[b].clone()).collect())
    }

    fn tr(&self, u: &GMap, v: &Vec<R::Elem>) -> Result<Vec<R::Elem>> {
        self.fold(u, v, self.ring.zero(), |a, b| self.ring.add(a, b))
    }

    fn norm(&self, n: &GMap, v: &Vec<R::Elem>) -> Result<Vec<R::Elem>> {
        self.fold(n, v, self.ring.one(), |a, b| self.ring.mul(a, b))
    }
}

/// `tr(t) ∘ norm(n) ∘ res(r)`.
pub fn eval_poly<T: TambaraFunctor + ?Sized>(
    t: &T,
    l: &MorphismClass,
    rc: &MorphismClass,
    p: &Polynomial,
    v: &T::Value,
) -> Result<T::Value> {
    p.require(l, rc)?;
    t.tr(p.t(), &t.norm(p.n(), &t.res(p.r(), v)?)?)
}

/// `eval(p;q) = eval(q) ∘ eval(p)` on the probes.
#[allow(clippy::too_many_arguments)]
pub fn check_tambara_functoriality<T: TambaraFunctor + ?Sized>(
    t: &T,
    l: &MorphismClass,
    rc: &MorphismClass,
    p: &Polynomial,
    q: &Polynomial,
    probes: &[T::Value],
    out: &mut CheckOutcome,
) {
    let composite = compose_poly(l, rc, p, q);
    for v in probes {
        let r = composite.as_ref().map_err(Clone::clone).and_then(|c| {
            let whole = eval_poly(t, l, rc, &c.poly, v)?;
            let parts = eval_poly(t, l, rc, q, &eval_poly(t, l, rc, p, v)?)?;
            Ok(whole == parts)
        });
        out.record_result(r, |ok| *ok, || {
            format!(
                "probe {}: p = {}, q = {}",
                t.render(v),
                crate::poly::describe(p),
                crate::poly::describe(q)
            )
        });
    }
}

/// `norm(u) ∘ tr(a) = tr(Π_u a) ∘ norm(ū) ∘ res(e)` on the probes.
#[allow(clippy::too_many_arguments)]
pub fn check_norm_of_sum<T: TambaraFunctor + ?Sized>(
    t: &T,
    l: &MorphismClass,
    rc: &MorphismClass,
    u: &GMap,
    a: &GMap,
    probes: &[T::Value],
    out: &mut CheckOutcome,
) {
    let d = distribute(l, rc, u, a);
    for v in probes {
        let r = d.as_ref().map_err(Clone::clone).and_then(|d| {
            let lhs = t.norm(u, &t.tr(a, v)?)?;
            let rhs = t.tr(d.pia(), &t.norm(d.ubar(), &t.res(d.e(), v)?)?)?;
            Ok(lhs == rhs)
        });
        out.record_result(r, |ok| *ok, || format!("u={:?} a={:?} probe {}", u.table(), a.table(), t.render(v)));
    }
}

/// `value(X+Y) ≅ value(X) × value(Y)` by restriction along the injections,
/// with `tr(i₁) a + tr(i₂) b` as the inverse.
pub fn check_fp_preservation<T: TambaraFunctor + ?Sized>(
    t: &T,
    x: &GSet,
    y: &GSet,
    pairs: &[(T::Value, T::Value)],
    over_sum: &[T::Value],
    out: &mut CheckOutcome,
) {
    let cp = match coproduct(x, y) {
        Ok(cp) => cp,
        Err(e) => {
            out.record(false, || e.to_string());
            return;
        }
    };
    for (a, b) in pairs {
        let r = (|| -> Result<bool> {
            let w = t.add(&t.tr(&cp.inj1, a)?, &t.tr(&cp.inj2, b)?)?;
            Ok(t.res(&cp.inj1, &w)? == *a && t.res(&cp.inj2, &w)? == *b)
        })();
        out.record_result(r, |ok| *ok, || format!("pair ({}, {})", t.render(a), t.render(b)));
    }
    for w in over_sum {
        let r = (|| -> Result<bool> {
            let back = t.add(
                &t.tr(&cp.inj1, &t.res(&cp.inj1, w)?)?,
                &t.tr(&cp.inj2, &t.res(&cp.inj2, w)?)?,
            )?;
            Ok(back == *w)
        })();
        out.record_result(r, |ok| *ok, || format!("element {}", t.render(w)));
    }
}

/// `res(g) ∘ tr(f) = tr(f_g) ∘ res(g_f)` and `res(g) ∘ norm(f) = norm(f_g) ∘ res(g_f)`.
pub fn check_exchange<T: TambaraFunctor + ?Sized>(
    t: &T,
    f: &GMap,
    g: &GMap,
    probes: &[T::Value],
    out: &mut CheckOutcome,
) {
    for v in probes {
        let r = (|| -> Result<bool> {
            let pb = pullback(f, g)?;
            let tr = t.res(g, &t.tr(f, v)?)? == t.tr(&pb.right, &t.res(&pb.left, v)?)?;
            let norm = t.res(g, &t.norm(f, v)?)? == t.norm(&pb.right, &t.res(&pb.left, v)?)?;
            Ok(tr && norm)
        })();
        out.record_result(r, |ok| *ok, || format!("f={:?} g={:?} probe {}", f.table(), g.table(), t.render(v)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finact::{codiagonal, terminal};
    use crate::mackey::{vectorize, BurnsideMackey, MackeyFunctor};
    use crate::poly::{eval_semiring, Booleans, Naturals};
    use crate::sample::Sampler;

    fn all() -> MorphismClass {
        MorphismClass::all()
    }

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2).unwrap())
    }

    #[test]
    fn semiring_anchors_and_identity() {
        let g = Arc::new(FiniteGroup::trivial());
        let two = GSet::new(g.clone(), 2, vec![vec![0, 1]]).unwrap();
        let one = terminal(&g);
        let bang = GMap::to_terminal(&two);
        let t = SemiringTambara::new(Naturals);
        let p = Polynomial::new(bang.clone(), bang.clone(), GMap::identity(&one)).unwrap();
        assert_eq!(eval_poly(&t, &all(), &all(), &p, &vec![3]).unwrap(), vec![9]);
        let p = Polynomial::new(bang.clone(), GMap::identity(&two), bang).unwrap();
        assert_eq!(eval_poly(&t, &all(), &all(), &p, &vec![3]).unwrap(), vec![6]);
        let id = Polynomial::identity(&two);
        assert_eq!(eval_poly(&t, &all(), &all(), &id, &vec![2, 5]).unwrap(), vec![2, 5]);
        assert!(t.res(&GMap::identity(&terminal(&c2())), &vec![1]).is_err());
    }

    #[test]
    fn burnside_norm_anchor() {
        let g = c2();
        let f = GSet::cosets(g.clone(), &g.trivial_subgroup());
        let pt = terminal(&g);
        let t = BurnsideTambara::new(g.clone());
        let (_, nabla) = codiagonal(&f).unwrap();
        let p = Polynomial::new(GMap::identity(&f), GMap::to_terminal(&f), GMap::identity(&pt)).unwrap();
        let out = eval_poly(&t, &all(), &all(), &p, &SliceObject::new(nabla)).unwrap();
        assert_eq!(out.total().size(), 4);
        assert_eq!(out.total().orbits().len(), 3);
        let id = Polynomial::identity(&f);
        let v = t.canonical(&SliceObject::identity(&f));
        assert_eq!(eval_poly(&t, &all(), &all(), &id, &v).unwrap(), v);
    }

    #[test]
    fn semiring_instance_matches_the_oracle() {
        let g = Arc::new(FiniteGroup::trivial());
        let mut s = Sampler::new(g.clone(), 31);
        let nat = SemiringTambara::new(Naturals);
        let boo = SemiringTambara::new(Booleans);
        let mut out = CheckOutcome::new("functoriality");
        for _ in 0..30 {
            let (x, y, z) = (s.gset(3), s.gset(3), s.gset(3));
            let p = s.polynomial(&x, &y, 4);
            let q = s.polynomial(&y, &z, 4);
            let v: Vec<u64> = (0..x.size() as u64).map(|i| i + 2).collect();
            assert_eq!(eval_poly(&nat, &all(), &all(), &p, &v).unwrap(), eval_semiring(&p, &v, &Naturals).unwrap());
            let b: Vec<bool> = (0..x.size()).map(|i| i % 2 == 0).collect();
            assert_eq!(eval_poly(&boo, &all(), &all(), &p, &b).unwrap(), eval_semiring(&p, &b, &Booleans).unwrap());
            check_tambara_functoriality(&nat, &all(), &all(), &p, &q, &[v], &mut out);
        }
        assert!(out.passed() && out.checked == 30);
    }

    #[test]
    fn burnside_functoriality_over_c2() {
        let g = c2();
        let mut s = Sampler::new(g.clone(), 32);
        let t = BurnsideTambara::new(g.clone());
        let mut out = CheckOutcome::new("functoriality");
        for _ in 0..15 {
            let (x, y, z) = (s.gset(2), s.gset(2), s.gset(2));
            let p = s.polynomial(&x, &y, 2);
            let q = s.polynomial(&y, &z, 2);
            let probes = vec![t.canonical(&s.slice_over(&x, 2))];
            check_tambara_functoriality(&t, &all(), &all(), &p, &q, &probes, &mut out);
        }
        assert!(out.passed() && out.checked == 15, "{out:?}");
    }

    #[test]
    fn norm_of_sum_exchange_and_products() {
        let g = c2();
        let mut s = Sampler::new(g.clone(), 33);
        let t = BurnsideTambara::new(g.clone());
        let mut dist = CheckOutcome::new("norm of sum");
        let mut ex = CheckOutcome::new("exchange");
        let mut fp = CheckOutcome::new("products");
        let m = BurnsideMackey::new(g.clone());
        for _ in 0..15 {
            let uu = s.gset(3);
            let u = s.map_into(&uu, 3);
            let a = s.map_into(u.dom(), 3);
            let probes = vec![t.canonical(&s.slice_over(a.dom(), 2))];
            check_norm_of_sum(&t, &all(), &all(), &u, &a, &probes, &mut dist);
            let w = s.gset(3);
            let f = s.map_into(&w, 3);
            let h = s.map_into(&w, 3);
            let probes = vec![t.canonical(&s.slice_over(f.dom(), 2))];
            check_exchange(&t, &f, &h, &probes, &mut ex);
            let (x, y) = (s.gset(3), s.gset(3));
            let pairs = vec![(t.canonical(&s.slice_over(&x, 3)), t.canonical(&s.slice_over(&y, 3)))];
            let sum = coproduct(&x, &y).unwrap().sum;
            let over = vec![t.canonical(&s.slice_over(&sum, 4))];
            check_fp_preservation(&t, &x, &y, &pairs, &over, &mut fp);
            // the additive reduct is the Burnside Mackey functor
            let c = s.slice_over(f.dom(), 3);
            let pushed = t.tr(&f, &c).unwrap();
            let by_matrix = m.tr(&f).unwrap().apply(&vectorize(f.dom(), &c).unwrap()).unwrap();
            assert_eq!(vectorize(f.cod(), &pushed).unwrap(), by_matrix);
        }
        for o in [dist, ex, fp] {
            assert!(o.passed(), "{o:?}");
        }
        let nat = SemiringTambara::new(Naturals);
        let gt = Arc::new(FiniteGroup::trivial());
        let two = GSet::new(gt.clone(), 2, vec![vec![0, 1]]).unwrap();
        let four = GSet::new(gt.clone(), 4, vec![vec![0, 1, 2, 3]]).unwrap();
        let u = GMap::to_terminal(&two);
        let a = GMap::new(four, two, vec![0, 0, 1, 1]).unwrap();
        let mut out = CheckOutcome::new("expansion");
        // (1 + 2)(3 + 4) expanded over the four choices
        check_norm_of_sum(&nat, &all(), &all(), &u, &a, &[vec![1, 2, 3, 4]], &mut out);
        assert!(out.passed());
        assert_eq!(nat.norm(&u, &nat.tr(&a, &vec![1, 2, 3, 4]).unwrap()).unwrap(), vec![21]);
    }
}
