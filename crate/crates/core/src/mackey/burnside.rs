//! The Burnside Mackey functor: `value(X)` is free on iso classes of
//! transitive G-sets over `X`.

use std::sync::Arc;

use super::{MackeyFunctor, NatMatrix};
use crate::error::{boundary, Result};
use crate::finact::{delta, orbit_types, realize_types, sigma, GMap, GSet, OrbitType, SliceObject};
use crate::group::FiniteGroup;

#[derive(Clone, Debug)]
pub struct BurnsideMackey {
    pub group: Arc<FiniteGroup>,
}

impl BurnsideMackey {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        BurnsideMackey { group }
    }
}

/// Orbit types of transitive slices over `x`, sorted.
pub fn atoms(x: &GSet) -> Vec<OrbitType> {
    let group = x.group();
    let mut out: Vec<OrbitType> = Vec::new();
    for p in x.points() {
        let stab = x.stabilizer(p);
        for h in group.subgroups().iter().filter(|h| h.is_subset_of(&stab)) {
            let t = OrbitType {
                labels: vec![p],
                stabilizer: h.clone(),
            };
            let (apex, maps) = realize_types(group, &[t], std::slice::from_ref(x));
            let canon = orbit_types(&apex, &|q| vec![maps[0].apply(q)]);
            out.push(canon.into_iter().next().expect("one orbit"));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The transitive slice realizing an atom.
pub fn atom_slice(x: &GSet, atom: &OrbitType) -> SliceObject {
    let (_, maps) = realize_types(x.group(), std::slice::from_ref(atom), std::slice::from_ref(x));
    SliceObject::new(maps.into_iter().next().expect("one target"))
}

/// Orbit counts of a slice over `x`, indexed by [`atoms`].
pub fn vectorize(x: &GSet, a: &SliceObject) -> Result<Vec<u64>> {
    if a.base() != x {
        return Err(boundary("slice is not over the given G-set"));
    }
    let basis = atoms(x);
    let mut v = vec![0; basis.len()];
    for t in orbit_types(a.total(), &|p| vec![a.map().apply(p)]) {
        let i = basis.binary_search(&t).map_err(|_| boundary("orbit type is not an atom"))?;
        v[i] += 1;
    }
    Ok(v)
}

/// The slice with the given orbit counts.
pub fn realize_vector(x: &GSet, v: &[u64]) -> Result<SliceObject> {
    let basis = atoms(x);
    if v.len() != basis.len() {
        return Err(boundary("vector length does not match the atoms"));
    }
    let types: Vec<OrbitType> = basis
        .iter()
        .zip(v)
        .flat_map(|(t, &k)| std::iter::repeat(t.clone()).take(k as usize))
        .collect();
    let (_, maps) = realize_types(x.group(), &types, std::slice::from_ref(x));
    Ok(SliceObject::new(maps.into_iter().next().expect("one target")))
}

impl MackeyFunctor for BurnsideMackey {
    fn name(&self) -> String {
        format!("burnside[{}]", self.group.name())
    }

    fn generators(&self, x: &GSet) -> Vec<String> {
        atoms(x).iter().map(ToString::to_string).collect()
    }

    fn res(&self, f: &GMap) -> Result<NatMatrix> {
        let (a, b) = (f.dom(), f.cod());
        let cols = atoms(b)
            .iter()
            .map(|t| vectorize(a, &delta(f, &atom_slice(b, t))?))
            .collect::<Result<Vec<_>>>()?;
        Ok(NatMatrix::from_columns(atoms(a).len(), &cols))
    }

    fn tr(&self, u: &GMap) -> Result<NatMatrix> {
        let (a, b) = (u.dom(), u.cod());
        let cols = atoms(a)
            .iter()
            .map(|t| vectorize(b, &sigma(u, &atom_slice(a, t))?))
            .collect::<Result<Vec<_>>>()?;
        Ok(NatMatrix::from_columns(atoms(b).len(), &cols))
    }
}
