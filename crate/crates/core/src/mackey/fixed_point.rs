//! The fixed-point Mackey functor `X ↦ Set^G(X, R)` for `R = ℕ^K`, with `G`
//! permuting the coordinates `K`.

use std::collections::BTreeSet;

use super::{MackeyFunctor, NatMatrix};
use crate::error::{boundary, Result};
use crate::finact::{GMap, GSet};

#[derive(Clone, Debug)]
pub struct FixedPointMackey {
    /// The coordinate G-set `K`.
    pub coords: GSet,
}

/// A generator: the equivariant function supported on the orbit of `point`,
/// taking value 1 on the `Stab(point)`-orbit `coords` at `point`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointGenerator {
    pub point: usize,
    pub coords: Vec<usize>,
}

impl FixedPointMackey {
    pub fn new(coords: GSet) -> Self {
        FixedPointMackey { coords }
    }

    /// `R = ℕ` with the trivial action.
    pub fn naturals(group: std::sync::Arc<crate::group::FiniteGroup>) -> Self {
        FixedPointMackey::new(GSet::terminal(group))
    }

    pub fn basis(&self, x: &GSet) -> Vec<FixedPointGenerator> {
        let mut out = Vec::new();
        for orbit in x.orbits() {
            let p = orbit[0];
            let stab = x.stabilizer(p);
            let mut seen = BTreeSet::new();
            for c in self.coords.points() {
                if seen.contains(&c) {
                    continue;
                }
                let mut cs: Vec<usize> = stab.elements().iter().map(|&h| self.coords.act(h, c)).collect();
                cs.sort_unstable();
                cs.dedup();
                seen.extend(cs.iter().copied());
                out.push(FixedPointGenerator { point: p, coords: cs });
            }
        }
        out
    }

    /// The function table `point → ℕ^K` of a generator.
    pub fn expand(&self, x: &GSet, gen: &FixedPointGenerator) -> Vec<Vec<u64>> {
        let mut table = vec![vec![0; self.coords.size()]; x.size()];
        for g in x.group().elements() {
            for &c in &gen.coords {
                table[x.act(g, gen.point)][self.coords.act(g, c)] = 1;
            }
        }
        table
    }

    /// Coordinates of an equivariant function in the basis.
    pub fn decompose(&self, x: &GSet, table: &[Vec<u64>]) -> Result<Vec<u64>> {
        if table.len() != x.size() || table.iter().any(|r| r.len() != self.coords.size()) {
            return Err(boundary("function table has the wrong shape"));
        }
        for g in x.group().elements() {
            for p in x.points() {
                for c in self.coords.points() {
                    if table[x.act(g, p)][self.coords.act(g, c)] != table[p][c] {
                        return Err(boundary("function is not equivariant"));
                    }
                }
            }
        }
        Ok(self.basis(x).iter().map(|b| table[b.point][b.coords[0]]).collect())
    }

    /// Expands a coordinate vector back to a function table.
    pub fn function(&self, x: &GSet, v: &[u64]) -> Result<Vec<Vec<u64>>> {
        let basis = self.basis(x);
        if v.len() != basis.len() {
            return Err(boundary("vector length does not match the basis"));
        }
        let mut table = vec![vec![0; self.coords.size()]; x.size()];
        for (b, &k) in basis.iter().zip(v) {
            for (row, add) in table.iter_mut().zip(self.expand(x, b)) {
                for (t, a) in row.iter_mut().zip(add) {
                    *t += k * a;
                }
            }
        }
        Ok(table)
    }
}

impl MackeyFunctor for FixedPointMackey {
    fn name(&self) -> String {
        format!("fixed-point[{} coordinates]", self.coords.size())
    }

    fn generators(&self, x: &GSet) -> Vec<String> {
        self.basis(x)
            .iter()
            .map(|b| format!("{}:{:?}", b.point, b.coords))
            .collect()
    }

    fn res(&self, f: &GMap) -> Result<NatMatrix> {
        let (a, b) = (f.dom(), f.cod());
        let cols = self
            .basis(b)
            .iter()
            .map(|gen| {
                let phi = self.expand(b, gen);
                let pulled: Vec<Vec<u64>> = a.points().map(|p| phi[f.apply(p)].clone()).collect();
                self.decompose(a, &pulled)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(NatMatrix::from_columns(self.basis(a).len(), &cols))
    }

    fn tr(&self, u: &GMap) -> Result<NatMatrix> {
        let (a, b) = (u.dom(), u.cod());
        let cols = self
            .basis(a)
            .iter()
            .map(|gen| {
                let phi = self.expand(a, gen);
                let mut pushed = vec![vec![0; self.coords.size()]; b.size()];
                for p in a.points() {
                    for (t, v) in pushed[u.apply(p)].iter_mut().zip(&phi[p]) {
                        *t += v;
                    }
                }
                self.decompose(b, &pushed)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(NatMatrix::from_columns(self.basis(b).len(), &cols))
    }
}
