//! Orbit types, canonical forms, isomorphism search and hom enumeration.
//!
//! A point `x` of a G-set carrying equivariant labels (images under maps to
//! other G-sets) has an orbit type: the least pair `(labels(y), Stab(y))`
//! over the orbit of `x`. Two labelled transitive G-sets are isomorphic
//! over their labels exactly when their orbit types agree, so isomorphism
//! testing reduces to comparing sorted multisets of orbit types.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::gset::{GMap, GSet};
use super::limits::guard;
use super::slice::SliceObject;
use crate::error::Result;
use crate::group::{FiniteGroup, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitType {
    pub labels: Vec<usize>,
    pub stabilizer: Subgroup,
}

impl fmt::Display for OrbitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")@{}", self.stabilizer)
    }
}

/// Per orbit: the orbit type and a point realizing it.
fn typed_orbits(x: &GSet, labels: &dyn Fn(usize) -> Vec<usize>) -> Vec<(OrbitType, usize)> {
    x.orbits()
        .into_iter()
        .map(|orbit| {
            orbit
                .into_iter()
                .map(|p| {
                    (
                        OrbitType {
                            labels: labels(p),
                            stabilizer: x.stabilizer(p),
                        },
                        p,
                    )
                })
                .min()
                .expect("orbits are nonempty")
        })
        .collect()
}

/// Sorted orbit types of a labelled G-set.
pub fn orbit_types(x: &GSet, labels: &dyn Fn(usize) -> Vec<usize>) -> Vec<OrbitType> {
    let mut t: Vec<OrbitType> = typed_orbits(x, labels).into_iter().map(|(t, _)| t).collect();
    t.sort();
    t
}

/// Renders a sorted multiset of orbit types as a stable string.
pub fn render_types(types: &[OrbitType]) -> String {
    if types.is_empty() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < types.len() {
        let mut j = i;
        while j < types.len() && types[j] == types[i] {
            j += 1;
        }
        parts.push(format!("{}*{}", j - i, types[i]));
        i = j;
    }
    parts.join(" + ")
}

/// Bijection `x → y` preserving labels, if one exists.
pub fn find_iso_labelled(
    x: &GSet,
    lx: &dyn Fn(usize) -> Vec<usize>,
    y: &GSet,
    ly: &dyn Fn(usize) -> Vec<usize>,
) -> Option<Vec<usize>> {
    if !x.same_group(y) || x.size() != y.size() {
        return None;
    }
    let tx = typed_orbits(x, lx);
    let ty = typed_orbits(y, ly);
    if tx.len() != ty.len() {
        return None;
    }
    let mut pool: HashMap<OrbitType, Vec<usize>> = HashMap::new();
    for (t, p) in ty.into_iter().rev() {
        pool.entry(t).or_default().push(p);
    }
    let group = x.group();
    let mut table = vec![usize::MAX; x.size()];
    for (t, px) in tx {
        let py = pool.get_mut(&t)?.pop()?;
        for g in group.elements() {
            table[x.act(g, px)] = y.act(g, py);
        }
    }
    Some(table)
}

pub fn canonical_form(x: &GSet) -> String {
    render_types(&orbit_types(x, &|_| Vec::new()))
}

pub fn slice_canonical_form(a: &SliceObject) -> String {
    let m = a.map();
    render_types(&orbit_types(m.dom(), &|p| vec![m.apply(p)]))
}

pub fn iso_gsets(x: &GSet, y: &GSet) -> Option<GMap> {
    let table = find_iso_labelled(x, &|_| Vec::new(), y, &|_| Vec::new())?;
    Some(GMap::new_unchecked(x.clone(), y.clone(), table))
}

/// An isomorphism of the total sets commuting with the maps to the common base.
pub fn slice_iso(a: &SliceObject, b: &SliceObject) -> Option<GMap> {
    if a.base() != b.base() {
        return None;
    }
    let (ma, mb) = (a.map(), b.map());
    let table = find_iso_labelled(
        ma.dom(),
        &|p| vec![ma.apply(p)],
        mb.dom(),
        &|p| vec![mb.apply(p)],
    )?;
    Some(GMap::new_unchecked(ma.dom().clone(), mb.dom().clone(), table))
}

/// Builds the canonical labelled G-set with the given orbit types.
///
/// Each type `(labels, H)` contributes a copy of `G/H`, with label maps
/// `gH ↦ g·labels[i]` into `targets[i]`.
pub fn realize_types(
    group: &Arc<FiniteGroup>,
    types: &[OrbitType],
    targets: &[GSet],
) -> (GSet, Vec<GMap>) {
    let mut offsets = Vec::with_capacity(types.len());
    let mut cosets = Vec::with_capacity(types.len());
    let mut total = 0;
    for t in types {
        let c = GSet::cosets(group.clone(), &t.stabilizer);
        offsets.push(total);
        total += c.size();
        cosets.push(c);
    }
    let owner: Vec<(usize, usize)> = cosets
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.points().map(move |p| (i, p)))
        .collect();
    let apex = GSet::from_fn(group, total, |g, q| {
        let (i, p) = owner[q];
        offsets[i] + cosets[i].act(g, p)
    });
    // coset p of G/H is `k H` for the transporter k from coset 0 (= H).
    let maps = targets
        .iter()
        .enumerate()
        .map(|(li, target)| {
            let table = (0..total)
                .map(|q| {
                    let (i, p) = owner[q];
                    let k = cosets[i].transporter(0, p).expect("transitive");
                    target.act(k, types[i].labels[li])
                })
                .collect();
            GMap::new_unchecked(apex.clone(), target.clone(), table)
        })
        .collect();
    (apex, maps)
}

/// All equivariant maps `x → y` whose value on each orbit representative is `allowed`.
///
/// `allowed` must be compatible with the action (e.g. equality of labels).
pub fn equivariant_maps(
    x: &GSet,
    y: &GSet,
    allowed: &dyn Fn(usize, usize) -> bool,
    limit: usize,
) -> Result<Vec<GMap>> {
    let orbits = x.orbits();
    let mut candidates = Vec::with_capacity(orbits.len());
    let mut count: u128 = 1;
    for orbit in &orbits {
        let rep = orbit[0];
        let stab = x.stabilizer(rep);
        let c: Vec<usize> = y
            .points()
            .filter(|&q| allowed(rep, q) && stab.elements().iter().all(|&h| y.act(h, q) == q))
            .collect();
        count = count.saturating_mul(c.len() as u128);
        candidates.push(c);
    }
    guard(count, limit)?;
    if count == 0 {
        return Ok(Vec::new());
    }
    // transporters from each representative
    let group = x.group();
    let mut spread: Vec<Vec<(usize, usize)>> = Vec::with_capacity(orbits.len());
    for orbit in &orbits {
        let rep = orbit[0];
        let mut seen = HashMap::new();
        for g in group.elements() {
            seen.entry(x.act(g, rep)).or_insert(g);
        }
        let mut v: Vec<(usize, usize)> = seen.into_iter().collect();
        v.sort_unstable();
        spread.push(v);
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut choice = vec![0usize; orbits.len()];
    loop {
        let mut table = vec![0; x.size()];
        for (i, sp) in spread.iter().enumerate() {
            let target = candidates[i][choice[i]];
            for &(p, g) in sp {
                table[p] = y.act(g, target);
            }
        }
        out.push(GMap::new_unchecked(x.clone(), y.clone(), table));
        // odometer, last orbit fastest
        let mut i = orbits.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

pub fn automorphisms(x: &GSet, limit: usize) -> Result<Vec<GMap>> {
    Ok(equivariant_maps(x, x, &|_, _| true, limit)?
        .into_iter()
        .filter(|m| m.is_iso())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finact::limits::coproduct;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2).unwrap())
    }

    #[test]
    fn iso_with_itself_and_swapped_sum() {
        let g = c2();
        let f = GSet::cosets(g.clone(), &g.trivial_subgroup());
        let pt = GSet::terminal(g.clone());
        let iso = iso_gsets(&f, &f).unwrap();
        assert!(iso.is_iso());
        let a = coproduct(&f, &pt).unwrap().sum;
        let b = coproduct(&pt, &f).unwrap().sum;
        let m = iso_gsets(&a, &b).unwrap();
        assert!(m.is_iso());
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn free_orbit_is_not_two_points() {
        // F has one orbit with trivial stabilizer, pt + pt has two fixed points.
        let g = c2();
        let f = GSet::cosets(g.clone(), &g.trivial_subgroup());
        let pt = GSet::terminal(g.clone());
        let two = coproduct(&pt, &pt).unwrap().sum;
        assert!(iso_gsets(&f, &two).is_none());
        assert_ne!(canonical_form(&f), canonical_form(&two));
    }

    #[test]
    fn realize_round_trips_types() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        for h in s3.subgroups() {
            let x = GSet::cosets(s3.clone(), h);
            let types = orbit_types(&x, &|_| Vec::new());
            let (y, _) = realize_types(&s3, &types, &[]);
            assert!(iso_gsets(&x, &y).is_some());
        }
    }

    #[test]
    fn hom_counts() {
        // Hom(F, F) for C2 has two maps (identity and swap); Hom(pt, F) is empty.
        let g = c2();
        let f = GSet::cosets(g.clone(), &g.trivial_subgroup());
        let pt = GSet::terminal(g.clone());
        assert_eq!(equivariant_maps(&f, &f, &|_, _| true, 100).unwrap().len(), 2);
        assert_eq!(equivariant_maps(&pt, &f, &|_, _| true, 100).unwrap().len(), 0);
        assert_eq!(automorphisms(&f, 100).unwrap().len(), 2);
    }
}
