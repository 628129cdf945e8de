//! Pullbacks, products and coproducts of G-sets.
//!
//! Constructed sets are numbered by the lexicographic order of the tuples
//! that define their points, so every construction is deterministic.

use std::sync::Arc;

use super::gset::{GMap, GSet};
use crate::error::{boundary, Error, Result};
use crate::group::FiniteGroup;

/// Default bound on the number of points of a constructed G-set.
pub const DEFAULT_MAX_POINTS: usize = 1_000_000;

pub(crate) fn guard(needed: u128, bound: usize) -> Result<()> {
    if needed > bound as u128 {
        Err(Error::ResourceLimit { needed, bound })
    } else {
        Ok(())
    }
}

/// The pullback `{(a, b) | f(a) = g(b)}` of a cospan `A → W ← B`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub apex: GSet,
    /// Projection to the domain of `f`.
    pub left: GMap,
    /// Projection to the domain of `g`.
    pub right: GMap,
    points: Vec<(usize, usize)>,
}

impl Pullback {
    /// The apex point `(a, b)`, if `f(a) = g(b)`.
    pub fn index(&self, a: usize, b: usize) -> Option<usize> {
        self.points.binary_search(&(a, b)).ok()
    }

    pub fn point(&self, i: usize) -> (usize, usize) {
        self.points[i]
    }

    pub fn points(&self) -> &[(usize, usize)] {
        &self.points
    }

    /// The mediating map `Q → P` induced by `p: Q → A`, `q: Q → B`.
    pub fn mediate(&self, p: &GMap, q: &GMap) -> Result<GMap> {
        if p.dom() != q.dom() || p.cod() != self.left.cod() || q.cod() != self.right.cod() {
            return Err(boundary("mediating map: cone does not match the pullback"));
        }
        let table = p
            .dom()
            .points()
            .map(|x| {
                self.index(p.apply(x), q.apply(x))
                    .ok_or_else(|| boundary("mediating map: cone does not commute"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GMap::new_unchecked(p.dom().clone(), self.apex.clone(), table))
    }
}

pub fn pullback(f: &GMap, g: &GMap) -> Result<Pullback> {
    pullback_with_limit(f, g, DEFAULT_MAX_POINTS)
}

pub fn pullback_with_limit(f: &GMap, g: &GMap, bound: usize) -> Result<Pullback> {
    if !f.dom().same_group(g.dom()) {
        return Err(Error::GroupMismatch);
    }
    if f.cod() != g.cod() {
        return Err(boundary("pullback of maps with different codomains"));
    }
    let g_fibers = g.fibers();
    let needed: u128 = f
        .dom()
        .points()
        .map(|a| g_fibers[f.apply(a)].len() as u128)
        .sum();
    guard(needed, bound)?;
    let mut points = Vec::with_capacity(needed as usize);
    for a in f.dom().points() {
        for &b in &g_fibers[f.apply(a)] {
            points.push((a, b));
        }
    }
    let (a_set, b_set) = (f.dom(), g.dom());
    let find = |p: (usize, usize)| points.binary_search(&p).expect("pullback is closed");
    let apex = GSet::from_fn(a_set.group(), points.len(), |h, i| {
        let (a, b) = points[i];
        find((a_set.act(h, a), b_set.act(h, b)))
    });
    let left = GMap::new_unchecked(apex.clone(), a_set.clone(), points.iter().map(|p| p.0).collect());
    let right = GMap::new_unchecked(apex.clone(), b_set.clone(), points.iter().map(|p| p.1).collect());
    Ok(Pullback {
        apex,
        left,
        right,
        points,
    })
}

/// Whether the commuting square `P → A, P → B` over `A → W ← B` is a pullback.
///
/// Checks commutativity, then that the mediating map into the canonical pullback is bijective.
pub fn is_pullback_square(p_left: &GMap, p_right: &GMap, f: &GMap, g: &GMap) -> bool {
    let Ok(pb) = pullback(f, g) else {
        return false;
    };
    match pb.mediate(p_left, p_right) {
        Ok(m) => m.is_iso(),
        Err(_) => false,
    }
}

/// `X + Y` with all points of `X` first.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub sum: GSet,
    pub inj1: GMap,
    pub inj2: GMap,
}

pub enum Summand {
    Left(usize),
    Right(usize),
}

impl Coproduct {
    pub fn left(&self) -> &GSet {
        self.inj1.dom()
    }

    pub fn right(&self) -> &GSet {
        self.inj2.dom()
    }

    pub fn split(&self, p: usize) -> Summand {
        let n = self.left().size();
        if p < n {
            Summand::Left(p)
        } else {
            Summand::Right(p - n)
        }
    }

    /// `[f, g]: X + Y → Z`.
    pub fn copair(&self, f: &GMap, g: &GMap) -> Result<GMap> {
        if f.dom() != self.left() || g.dom() != self.right() || f.cod() != g.cod() {
            return Err(boundary("copairing: maps do not match the coproduct"));
        }
        let table = f.table().iter().chain(g.table()).copied().collect();
        Ok(GMap::new_unchecked(self.sum.clone(), f.cod().clone(), table))
    }
}

pub fn coproduct(x: &GSet, y: &GSet) -> Result<Coproduct> {
    if !x.same_group(y) {
        return Err(Error::GroupMismatch);
    }
    let n = x.size();
    let sum = GSet::from_fn(x.group(), n + y.size(), |g, p| {
        if p < n {
            x.act(g, p)
        } else {
            n + y.act(g, p - n)
        }
    });
    let inj1 = GMap::new_unchecked(x.clone(), sum.clone(), x.points().collect());
    let inj2 = GMap::new_unchecked(y.clone(), sum.clone(), y.points().map(|p| p + n).collect());
    Ok(Coproduct { sum, inj1, inj2 })
}

/// `f + g: X + Y → X' + Y'` between two constructed coproducts.
pub fn sum_map(f: &GMap, g: &GMap, src: &Coproduct, tgt: &Coproduct) -> Result<GMap> {
    if f.dom() != src.left() || g.dom() != src.right() || f.cod() != tgt.left() || g.cod() != tgt.right() {
        return Err(boundary("sum of maps: coproducts do not match"));
    }
    let n = tgt.left().size();
    let table = f
        .table()
        .iter()
        .copied()
        .chain(g.table().iter().map(|&y| y + n))
        .collect();
    Ok(GMap::new_unchecked(src.sum.clone(), tgt.sum.clone(), table))
}

/// The codiagonal `X + X → X`.
pub fn codiagonal(x: &GSet) -> Result<(Coproduct, GMap)> {
    let c = coproduct(x, x)?;
    let id = GMap::identity(x);
    let nabla = c.copair(&id, &id)?;
    Ok((c, nabla))
}

/// `X × Y`, point `(a, b)` numbered `a·|Y| + b`.
#[derive(Clone, Debug)]
pub struct Product {
    pub prod: GSet,
    pub pr1: GMap,
    pub pr2: GMap,
}

impl Product {
    pub fn index(&self, a: usize, b: usize) -> usize {
        a * self.pr2.cod().size() + b
    }

    /// `(f, g): Z → X × Y`.
    pub fn pair(&self, f: &GMap, g: &GMap) -> Result<GMap> {
        if f.dom() != g.dom() || f.cod() != self.pr1.cod() || g.cod() != self.pr2.cod() {
            return Err(boundary("pairing: maps do not match the product"));
        }
        let table = f.dom().points().map(|z| self.index(f.apply(z), g.apply(z))).collect();
        Ok(GMap::new_unchecked(f.dom().clone(), self.prod.clone(), table))
    }
}

pub fn product(x: &GSet, y: &GSet) -> Result<Product> {
    if !x.same_group(y) {
        return Err(Error::GroupMismatch);
    }
    let m = y.size();
    let prod = GSet::from_fn(x.group(), x.size() * m, |g, p| {
        x.act(g, p / m) * m + y.act(g, p % m)
    });
    let pr1 = GMap::new_unchecked(prod.clone(), x.clone(), prod.points().map(|p| p / m).collect());
    let pr2 = GMap::new_unchecked(prod.clone(), y.clone(), prod.points().map(|p| p % m).collect());
    Ok(Product { prod, pr1, pr2 })
}

/// `f × g: X × X' → Y × Y'`.
pub fn product_map(f: &GMap, g: &GMap) -> Result<(Product, Product, GMap)> {
    let src = product(f.dom(), g.dom())?;
    let tgt = product(f.cod(), g.cod())?;
    let table = src
        .prod
        .points()
        .map(|p| {
            let (a, b) = (src.pr1.apply(p), src.pr2.apply(p));
            tgt.index(f.apply(a), g.apply(b))
        })
        .collect();
    let m = GMap::new_unchecked(src.prod.clone(), tgt.prod.clone(), table);
    Ok((src, tgt, m))
}

pub fn terminal(group: &Arc<FiniteGroup>) -> GSet {
    GSet::terminal(group.clone())
}

pub fn initial(group: &Arc<FiniteGroup>) -> GSet {
    GSet::initial(group.clone())
}
