use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

/// A finite set with a left action of a finite group, points `0..size`.
#[derive(Clone)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    size: usize,
    // action[g * size + x] = g·x
    action: Arc<[usize]>,
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && same_group(&self.group, &other.group)
            && (Arc::ptr_eq(&self.action, &other.action) || self.action == other.action)
    }
}

impl Eq for GSet {}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GSet({} points over {})", self.size, self.group.name())
    }
}

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GSet {
    /// `action[g][x]` is `g·x`.
    pub fn new(group: Arc<FiniteGroup>, size: usize, action: Vec<Vec<usize>>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::InvalidGSet(format!(
                "expected {} permutations, got {}",
                group.order(),
                action.len()
            )));
        }
        let mut flat = Vec::with_capacity(group.order() * size);
        for (g, row) in action.iter().enumerate() {
            if row.len() != size {
                return Err(Error::InvalidGSet(format!("row for element {g} has wrong length")));
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(group, size, flat)
    }

    /// Builds the action from the permutations of a generating set of group elements.
    pub fn from_generator_action(
        group: Arc<FiniteGroup>,
        size: usize,
        generators: &[(usize, Vec<usize>)],
    ) -> Result<Self> {
        for (g, p) in generators {
            if *g >= group.order() || p.len() != size || p.iter().any(|&x| x >= size) {
                return Err(Error::InvalidGSet(format!("bad image for generator {g}")));
            }
        }
        let mut perms: Vec<Option<Vec<usize>>> = vec![None; group.order()];
        perms[group.identity()] = Some((0..size).collect());
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(a) = queue.pop_front() {
            let pa = perms[a].clone().expect("visited");
            for (g, pg) in generators {
                let ag = group.mul(a, *g);
                let p: Vec<usize> = pg.iter().map(|&x| pa[x]).collect();
                match &perms[ag] {
                    Some(existing) if *existing != p => {
                        return Err(Error::InvalidGSet(
                            "generator images do not define an action".into(),
                        ))
                    }
                    Some(_) => {}
                    None => {
                        perms[ag] = Some(p);
                        queue.push_back(ag);
                    }
                }
            }
        }
        let action = perms
            .into_iter()
            .enumerate()
            .map(|(g, p)| {
                p.ok_or_else(|| {
                    Error::InvalidGSet(format!("element {g} not reached by the generators"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, size, action)
    }

    pub(crate) fn from_flat(group: Arc<FiniteGroup>, size: usize, flat: Vec<usize>) -> Result<Self> {
        if flat.len() != group.order() * size || flat.iter().any(|&x| x >= size) {
            return Err(Error::InvalidGSet("action table out of range".into()));
        }
        let x = GSet {
            group,
            size,
            action: flat.into(),
        };
        for p in 0..size {
            if x.act(x.group.identity(), p) != p {
                return Err(Error::InvalidGSet(format!("identity moves point {p}")));
            }
        }
        for g in x.group.elements() {
            for h in x.group.elements() {
                let gh = x.group.mul(g, h);
                for p in 0..size {
                    if x.act(g, x.act(h, p)) != x.act(gh, p) {
                        return Err(Error::InvalidGSet(format!(
                            "g·(h·x) != (gh)·x for g={g}, h={h}, x={p}"
                        )));
                    }
                }
            }
        }
        Ok(x)
    }

    /// Construction from a table already known to be an action.
    pub(crate) fn from_flat_unchecked(group: Arc<FiniteGroup>, size: usize, flat: Vec<usize>) -> Self {
        debug_assert_eq!(flat.len(), group.order() * size);
        GSet {
            group,
            size,
            action: flat.into(),
        }
    }

    /// Builds a set from a closure computing `g·x`.
    pub(crate) fn from_fn(
        group: &Arc<FiniteGroup>,
        size: usize,
        act: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut flat = Vec::with_capacity(group.order() * size);
        for g in group.elements() {
            for x in 0..size {
                flat.push(act(g, x));
            }
        }
        Self::from_flat_unchecked(group.clone(), size, flat)
    }

    pub fn terminal(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        Self::from_flat_unchecked(group, 1, vec![0; n])
    }

    pub fn initial(group: Arc<FiniteGroup>) -> Self {
        Self::from_flat_unchecked(group, 0, Vec::new())
    }

    /// The transitive set `G/H` of left cosets. Point 0 is `H` itself; the rest are
    /// ordered by least element.
    pub fn cosets(group: Arc<FiniteGroup>, h: &Subgroup) -> Self {
        let (size, coset_of) = coset_numbering(&group, h);
        let g = &group;
        // gH has representative: any element k with coset_of[k] = c.
        let mut rep = vec![usize::MAX; size];
        for k in g.elements() {
            if rep[coset_of[k]] == usize::MAX {
                rep[coset_of[k]] = k;
            }
        }
        Self::from_fn(&group.clone(), size, |a, c| coset_of[group.mul(a, rep[c])])
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.size + x]
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn same_group(&self, other: &GSet) -> bool {
        same_group(&self.group, &other.group)
    }

    pub fn action_table(&self) -> Vec<Vec<usize>> {
        if self.size == 0 {
            return vec![Vec::new(); self.group.order()];
        }
        self.action.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// Orbits, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for x in self.points() {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = Vec::new();
            for g in self.group.elements() {
                let y = self.act(g, x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn orbit_of(&self, x: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.group.elements().map(|g| self.act(g, x)).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        Subgroup::from_sorted(self.group.elements().filter(|&g| self.act(g, x) == x).collect())
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// For a point `y` in the orbit of `x`, some `g` with `g·x = y`.
    pub fn transporter(&self, x: usize, y: usize) -> Option<usize> {
        self.group.elements().find(|&g| self.act(g, x) == y)
    }
}

/// Numbers the left cosets of `h` by least element; returns the count and the coset of each element.
pub(crate) fn coset_numbering(group: &FiniteGroup, h: &Subgroup) -> (usize, Vec<usize>) {
    let mut coset_of = vec![usize::MAX; group.order()];
    let mut count = 0;
    let order = std::iter::once(group.identity()).chain(group.elements());
    for g in order {
        if coset_of[g] != usize::MAX {
            continue;
        }
        for &k in h.elements() {
            coset_of[group.mul(g, k)] = count;
        }
        count += 1;
    }
    (count, coset_of)
}

/// An equivariant map between two G-sets.
#[derive(Clone, PartialEq, Eq)]
pub struct GMap {
    dom: GSet,
    cod: GSet,
    table: Vec<usize>,
}

impl fmt::Debug for GMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GMap({} -> {}: {:?})", self.dom.size, self.cod.size, self.table)
    }
}

impl GMap {
    /// Validates range and equivariance.
    pub fn new(dom: GSet, cod: GSet, table: Vec<usize>) -> Result<Self> {
        if !dom.same_group(&cod) {
            return Err(Error::GroupMismatch);
        }
        if table.len() != dom.size() {
            return Err(Error::InvalidMap(format!(
                "table has {} entries for a domain of {} points",
                table.len(),
                dom.size()
            )));
        }
        if let Some(x) = table.iter().position(|&y| y >= cod.size()) {
            return Err(Error::InvalidMap(format!("point {x} maps out of range")));
        }
        for g in dom.group().elements() {
            for x in dom.points() {
                if table[dom.act(g, x)] != cod.act(g, table[x]) {
                    return Err(Error::InvalidMap(format!(
                        "not equivariant at g={g}, x={x}"
                    )));
                }
            }
        }
        Ok(GMap { dom, cod, table })
    }

    pub(crate) fn new_unchecked(dom: GSet, cod: GSet, table: Vec<usize>) -> Self {
        debug_assert!(GMap::new(dom.clone(), cod.clone(), table.clone()).is_ok());
        GMap { dom, cod, table }
    }

    pub fn identity(x: &GSet) -> Self {
        GMap {
            dom: x.clone(),
            cod: x.clone(),
            table: x.points().collect(),
        }
    }

    pub fn to_terminal(x: &GSet) -> Self {
        GMap {
            dom: x.clone(),
            cod: GSet::terminal(x.group().clone()),
            table: vec![0; x.size()],
        }
    }

    pub fn from_initial(x: &GSet) -> Self {
        GMap {
            dom: GSet::initial(x.group().clone()),
            cod: x.clone(),
            table: Vec::new(),
        }
    }

    pub fn dom(&self) -> &GSet {
        &self.dom
    }

    pub fn cod(&self) -> &GSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &GMap) -> Result<GMap> {
        if inner.cod != self.dom {
            return Err(crate::error::boundary(
                "composite: codomain of the first map differs from domain of the second",
            ));
        }
        Ok(GMap {
            dom: inner.dom.clone(),
            cod: self.cod.clone(),
            table: inner.table.iter().map(|&x| self.table[x]).collect(),
        })
    }

    /// Diagrammatic composite: first `self`, then `next`.
    pub fn then(&self, next: &GMap) -> Result<GMap> {
        next.compose(self)
    }

    pub fn fiber(&self, y: usize) -> Vec<usize> {
        self.dom.points().filter(|&x| self.table[x] == y).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.table.iter().enumerate().all(|(i, &y)| i == y)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        self.table.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        self.image_size() == self.cod.size()
    }

    pub fn is_iso(&self) -> bool {
        self.dom.size() == self.cod.size() && self.is_injective()
    }

    pub fn image_size(&self) -> usize {
        let mut seen = vec![false; self.cod.size()];
        for &y in &self.table {
            seen[y] = true;
        }
        seen.into_iter().filter(|b| *b).count()
    }

    pub fn inverse(&self) -> Option<GMap> {
        if !self.is_iso() {
            return None;
        }
        let mut inv = vec![0; self.cod.size()];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y] = x;
        }
        Some(GMap {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            table: inv,
        })
    }

    /// Lookup table from codomain points to their preimages.
    pub(crate) fn fibers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.cod.size()];
        for (x, &y) in self.table.iter().enumerate() {
            out[y].push(x);
        }
        out
    }
}

/// Index of each point in a sorted list, as a dense lookup.
pub(crate) fn position_map(size: usize, items: &[usize]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; size];
    for (i, &x) in items.iter().enumerate() {
        pos[x] = i;
    }
    pos
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2).unwrap())
    }

    #[test]
    fn cosets_of_trivial_subgroup_are_free() {
        let g = c2();
        let f = GSet::cosets(g.clone(), &g.trivial_subgroup());
        assert_eq!(f.size(), 2);
        assert_eq!(f.orbits().len(), 1);
        assert_eq!(f.stabilizer(0).order(), 1);
        let pt = GSet::cosets(g.clone(), &g.whole());
        assert_eq!(pt, GSet::terminal(g));
    }

    #[test]
    fn rejects_non_action() {
        let g = c2();
        // swapping by the identity is not allowed
        assert!(GSet::new(g.clone(), 2, vec![vec![1, 0], vec![1, 0]]).is_err());
        assert!(GSet::new(g, 2, vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn generator_action_extends() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        // the defining permutation action: elements 1, 2 are the generators
        let x = GSet::from_generator_action(
            s3.clone(),
            3,
            &[(1, vec![1, 0, 2]), (2, vec![1, 2, 0])],
        )
        .unwrap();
        assert!(x.is_transitive());
        assert_eq!(x.stabilizer(0).order(), 2);
    }

    #[test]
    fn map_equivariance_is_checked() {
        let g = c2();
        let f = GSet::cosets(g.clone(), &g.trivial_subgroup());
        let pt = GSet::terminal(g.clone());
        assert!(GMap::new(f.clone(), pt.clone(), vec![0, 0]).is_ok());
        assert!(GMap::new(pt, f, vec![0]).is_err());
    }

    #[test]
    fn composite_and_inverse() {
        let g = c2();
        let f = GSet::cosets(g.clone(), &g.trivial_subgroup());
        let swap = GMap::new(f.clone(), f.clone(), vec![1, 0]).unwrap();
        let id = swap.compose(&swap).unwrap();
        assert!(id.is_identity());
        assert_eq!(swap.inverse().unwrap(), swap);
    }
}
