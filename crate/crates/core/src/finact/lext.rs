//! Lextensivity of finite G-sets: maps over a coproduct split uniquely.

use super::gset::{GMap, GSet};
use super::limits::{sum_map, Coproduct, Summand};
use crate::error::{boundary, Error, Result};

/// A commuting triangle `f: A+B → A'+B'` over `U+V`, with `h + k` on the
/// source and `h' + k'` on the target.
#[derive(Clone, Debug)]
pub struct LextTriangle<'a> {
    pub base: &'a Coproduct,
    pub src: &'a Coproduct,
    pub tgt: &'a Coproduct,
    pub h: &'a GMap,
    pub k: &'a GMap,
    pub h2: &'a GMap,
    pub k2: &'a GMap,
    pub f: &'a GMap,
}

/// The unique `r: A → A'`, `s: B → B'` with `f = r + s`, `h = h'∘r`, `k = k'∘s`.
pub fn lextensive_factor(t: &LextTriangle<'_>) -> Result<(GMap, GMap)> {
    let over_src = sum_map(t.h, t.k, t.src, t.base)?;
    let over_tgt = sum_map(t.h2, t.k2, t.tgt, t.base)?;
    if t.f.dom() != &t.src.sum || t.f.cod() != &t.tgt.sum {
        return Err(boundary("factorization: f does not run between the given coproducts"));
    }
    if over_tgt.compose(t.f)?.table() != over_src.table() {
        return Err(boundary("factorization: the triangle over U+V does not commute"));
    }
    let mut r = Vec::with_capacity(t.src.left().size());
    let mut s = Vec::with_capacity(t.src.right().size());
    for p in t.src.sum.points() {
        match (t.src.split(p), t.tgt.split(t.f.apply(p))) {
            (Summand::Left(_), Summand::Left(q)) => r.push(q),
            (Summand::Right(_), Summand::Right(q)) => s.push(q),
            _ => {
                return Err(Error::Lextensivity(format!(
                    "point {p} crosses summands under f"
                )))
            }
        }
    }
    Ok((
        GMap::new(t.src.left().clone(), t.tgt.left().clone(), r)?,
        GMap::new(t.src.right().clone(), t.tgt.right().clone(), s)?,
    ))
}

/// The two pullback squares of `f: R → U+V` along the coproduct injections.
#[derive(Clone, Debug)]
pub struct CoproductPullbacks {
    pub s: GSet,
    pub t: GSet,
    /// `h: S → U`
    pub h: GMap,
    /// `k: T → V`
    pub k: GMap,
    /// `ī: S → R`
    pub ibar: GMap,
    /// `j̄: T → R`
    pub jbar: GMap,
}

/// Splits `R` into `S = f⁻¹(U)` and `T = f⁻¹(V)`, keeping the point order of `R`.
pub fn coproduct_pullback_decompose(f: &GMap, base: &Coproduct) -> Result<CoproductPullbacks> {
    if f.cod() != &base.sum {
        return Err(boundary("codomain is not the given coproduct"));
    }
    let r = f.dom();
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for p in r.points() {
        match base.split(f.apply(p)) {
            Summand::Left(_) => left.push(p),
            Summand::Right(_) => right.push(p),
        }
    }
    let n = base.left().size();
    let restrict = |pts: &[usize]| -> GSet {
        let pos = super::gset::position_map(r.size(), pts);
        GSet::from_fn(r.group(), pts.len(), |g, i| pos[r.act(g, pts[i])])
    };
    let s = restrict(&left);
    let t = restrict(&right);
    let h = GMap::new_unchecked(s.clone(), base.left().clone(), left.iter().map(|&p| f.apply(p)).collect());
    let k = GMap::new_unchecked(t.clone(), base.right().clone(), right.iter().map(|&p| f.apply(p) - n).collect());
    let ibar = GMap::new_unchecked(s.clone(), r.clone(), left);
    let jbar = GMap::new_unchecked(t.clone(), r.clone(), right);
    Ok(CoproductPullbacks {
        s,
        t,
        h,
        k,
        ibar,
        jbar,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::finact::limits::{coproduct, initial, is_pullback_square};
    use crate::group::FiniteGroup;

    fn setup() -> (Arc<FiniteGroup>, GSet, GSet) {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let f = GSet::cosets(g.clone(), &g.trivial_subgroup());
        let pt = GSet::terminal(g.clone());
        (g, f, pt)
    }

    #[test]
    fn identity_factors_as_identities() {
        let (_, f, pt) = setup();
        let base = coproduct(&pt, &pt).unwrap();
        let src = coproduct(&f, &f).unwrap();
        let h = GMap::to_terminal(&f);
        let tri = LextTriangle {
            base: &base,
            src: &src,
            tgt: &src,
            h: &h,
            k: &h,
            h2: &h,
            k2: &h,
            f: &GMap::identity(&src.sum),
        };
        let (r, s) = lextensive_factor(&tri).unwrap();
        assert!(r.is_identity() && s.is_identity());
    }

    #[test]
    fn swap_within_summands() {
        // f swaps the two points inside each copy of F: r = s = swap.
        let (_, f, pt) = setup();
        let base = coproduct(&pt, &pt).unwrap();
        let src = coproduct(&f, &f).unwrap();
        let h = GMap::to_terminal(&f);
        let swap = GMap::new(src.sum.clone(), src.sum.clone(), vec![1, 0, 3, 2]).unwrap();
        let tri = LextTriangle {
            base: &base,
            src: &src,
            tgt: &src,
            h: &h,
            k: &h,
            h2: &h,
            k2: &h,
            f: &swap,
        };
        let (r, s) = lextensive_factor(&tri).unwrap();
        assert_eq!(r.table(), &[1, 0]);
        assert_eq!(s.table(), &[1, 0]);
    }

    #[test]
    fn non_commuting_triangle_is_rejected() {
        // Over pt + pt, a map exchanging the summands cannot commute.
        let (_, f, pt) = setup();
        let base = coproduct(&pt, &pt).unwrap();
        let src = coproduct(&f, &f).unwrap();
        let h = GMap::to_terminal(&f);
        let cross = GMap::new(src.sum.clone(), src.sum.clone(), vec![2, 3, 0, 1]).unwrap();
        let tri = LextTriangle {
            base: &base,
            src: &src,
            tgt: &src,
            h: &h,
            k: &h,
            h2: &h,
            k2: &h,
            f: &cross,
        };
        assert!(matches!(lextensive_factor(&tri), Err(Error::BoundaryMismatch(_))));
    }

    #[test]
    fn decompose_injection_and_constant() {
        let (g, f, pt) = setup();
        let base = coproduct(&f, &pt).unwrap();
        let d = coproduct_pullback_decompose(&base.inj1, &base).unwrap();
        assert_eq!(d.s.size(), 2);
        assert_eq!(d.t, initial(&g));
        assert!(is_pullback_square(&d.ibar, &d.h, &base.inj1, &base.inj1));

        let base2 = coproduct(&pt, &pt).unwrap();
        let constant = GMap::new(f.clone(), base2.sum.clone(), vec![0, 0]).unwrap();
        let d2 = coproduct_pullback_decompose(&constant, &base2).unwrap();
        assert_eq!(d2.s, f);
        assert_eq!(d2.t.size(), 0);
        assert!(is_pullback_square(&d2.ibar, &d2.h, &constant, &base2.inj1));
        assert!(is_pullback_square(&d2.jbar, &d2.k, &constant, &base2.inj2));
    }

    #[test]
    fn decompose_requires_matching_coproduct() {
        let (_, f, pt) = setup();
        let base = coproduct(&pt, &pt).unwrap();
        assert!(coproduct_pullback_decompose(&GMap::identity(&f), &base).is_err());
    }
}
