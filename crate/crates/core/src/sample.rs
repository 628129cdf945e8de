//! Seeded random G-sets, maps, spans and polynomials for the law checkers.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::finact::{product, realize_types, GMap, GSet, OrbitType, SliceObject};
use crate::group::FiniteGroup;
use crate::poly::Polynomial;
use crate::span::Span;

pub struct Sampler {
    rng: ChaCha8Rng,
    group: Arc<FiniteGroup>,
}

/// Maps drawn for the morphism-class checkers.
#[derive(Clone, Debug, Default)]
pub struct SampleFamily {
    pub maps: Vec<GMap>,
    /// Composable pairs `(first, second)` with `first.cod = second.dom`.
    pub chains: Vec<(GMap, GMap)>,
    /// Cospans `(f, g)` with a common codomain.
    pub cospans: Vec<(GMap, GMap)>,
}

impl SampleFamily {
    pub fn len(&self) -> usize {
        self.maps.len() + self.chains.len() + self.cospans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Sampler {
    pub fn new(group: Arc<FiniteGroup>, seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            group,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn subgroup_with_index_at_most(&mut self, within: &crate::group::Subgroup, max: usize) -> Option<crate::group::Subgroup> {
        let n = self.group.order();
        let options: Vec<_> = self
            .group
            .subgroups()
            .iter()
            .filter(|h| h.is_subset_of(within) && n / h.order() <= max)
            .cloned()
            .collect();
        options.choose(&mut self.rng).cloned()
    }

    /// A random G-set with at most `max_points` points (possibly empty).
    pub fn gset(&mut self, max_points: usize) -> GSet {
        let pt = GSet::terminal(self.group.clone());
        self.slice_over(&pt, max_points).total().clone()
    }

    /// A random nonempty G-set with at most `max_points` points (`max_points ≥ 1`).
    pub fn nonempty_gset(&mut self, max_points: usize) -> GSet {
        loop {
            let x = self.gset(max_points.max(1));
            if !x.is_empty() {
                return x;
            }
        }
    }

    /// A random object over `base` whose total set has at most `max_points` points.
    pub fn slice_over(&mut self, base: &GSet, max_points: usize) -> SliceObject {
        let mut types = Vec::new();
        if !base.is_empty() {
            let orbits = self.rng.gen_range(0..=3usize);
            let mut room = max_points;
            for _ in 0..orbits {
                let y = self.rng.gen_range(0..base.size());
                let stab = base.stabilizer(y);
                let Some(h) = self.subgroup_with_index_at_most(&stab, room) else {
                    continue;
                };
                room -= self.group.order() / h.order();
                types.push(OrbitType {
                    labels: vec![y],
                    stabilizer: h,
                });
            }
        }
        let (apex, maps) = realize_types(&self.group, &types, std::slice::from_ref(base));
        let shuffle = self.relabel(&apex);
        SliceObject::new(maps[0].compose(&shuffle).expect("relabelling"))
    }

    /// A random isomorphism `X' → X` from a renumbered copy `X'` of `X`.
    pub fn relabel(&mut self, x: &GSet) -> GMap {
        let mut perm: Vec<usize> = x.points().collect();
        perm.shuffle(&mut self.rng);
        // new point i is old point perm[i]
        let mut inv = vec![0; x.size()];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let copy = GSet::from_fn(x.group(), x.size(), |g, i| inv[x.act(g, perm[i])]);
        GMap::new_unchecked(copy, x.clone(), perm)
    }

    pub fn map_into(&mut self, cod: &GSet, max_points: usize) -> GMap {
        self.slice_over(cod, max_points).map().clone()
    }

    /// A random map with the given domain and codomain, if any exists.
    pub fn map_between(&mut self, dom: &GSet, cod: &GSet) -> Option<GMap> {
        let mut table = vec![usize::MAX; dom.size()];
        for orbit in dom.orbits() {
            let rep = orbit[0];
            let stab = dom.stabilizer(rep);
            let candidates: Vec<usize> = cod
                .points()
                .filter(|&q| stab.elements().iter().all(|&h| cod.act(h, q) == q))
                .collect();
            let target = *candidates.choose(&mut self.rng)?;
            for g in self.group.elements() {
                table[dom.act(g, rep)] = cod.act(g, target);
            }
        }
        Some(GMap::new_unchecked(dom.clone(), cod.clone(), table))
    }

    /// The inclusion of a random union of orbits of `cod`.
    pub fn injection_into(&mut self, cod: &GSet) -> GMap {
        let keep: Vec<usize> = cod
            .orbits()
            .into_iter()
            .filter(|_| self.rng.gen_bool(0.6))
            .flatten()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let pos = crate::finact::position_map(cod.size(), &keep);
        let sub = GSet::from_fn(cod.group(), keep.len(), |g, i| pos[cod.act(g, keep[i])]);
        let shuffle = self.relabel(&sub);
        GMap::new_unchecked(sub, cod.clone(), keep)
            .compose(&shuffle)
            .expect("relabelling")
    }

    /// A random surjection onto `cod`.
    pub fn surjection_onto(&mut self, cod: &GSet, extra_points: usize) -> GMap {
        let mut types: Vec<OrbitType> = cod
            .orbits()
            .into_iter()
            .map(|o| OrbitType {
                labels: vec![o[0]],
                stabilizer: cod.stabilizer(o[0]),
            })
            .collect();
        let extra = self.slice_over(cod, extra_points);
        types.extend(crate::finact::orbit_types(extra.total(), &|p| vec![extra.map().apply(p)]));
        types.shuffle(&mut self.rng);
        let (apex, maps) = realize_types(&self.group, &types, std::slice::from_ref(cod));
        let shuffle = self.relabel(&apex);
        maps[0].compose(&shuffle).expect("relabelling")
    }

    /// A map of a random kind (arbitrary, injective, surjective, iso) into `cod`.
    pub fn mixed_map_into(&mut self, cod: &GSet, max_points: usize) -> GMap {
        match self.rng.gen_range(0..4) {
            0 => self.map_into(cod, max_points),
            1 => self.injection_into(cod),
            2 => self.surjection_onto(cod, max_points.saturating_sub(cod.size())),
            _ => self.relabel(cod),
        }
    }

    /// A span `U ← S → V` whose apex is a random object over `U × V`.
    pub fn span(&mut self, u: &GSet, v: &GSet, max_points: usize) -> Span {
        let p = product(u, v).expect("same group");
        let m = self.map_into(&p.prod, max_points);
        Span::new(p.pr1.compose(&m).expect("composable"), p.pr2.compose(&m).expect("composable"))
            .expect("common apex")
    }

    /// A polynomial `X ← A → B → Y`; `A` is a random object over `X × B`.
    pub fn polynomial(&mut self, x: &GSet, y: &GSet, max_points: usize) -> Polynomial {
        let t = self.map_into(y, max_points);
        let p = product(x, t.dom()).expect("same group");
        let m = self.map_into(&p.prod, max_points);
        Polynomial::new(
            p.pr1.compose(&m).expect("composable"),
            p.pr2.compose(&m).expect("composable"),
            t,
        )
        .expect("well-formed polynomial")
    }

    pub fn family(&mut self, count: usize, max_points: usize) -> SampleFamily {
        let mut fam = SampleFamily::default();
        for _ in 0..count {
            let cod = self.gset(max_points);
            fam.maps.push(self.mixed_map_into(&cod, max_points));
            let u = self.gset(max_points);
            let second = self.mixed_map_into(&u, max_points);
            let first = self.mixed_map_into(second.dom(), max_points);
            fam.chains.push((first, second));
            let w = self.gset(max_points);
            let f = self.mixed_map_into(&w, max_points);
            let g = self.mixed_map_into(&w, max_points);
            fam.cospans.push((f, g));
        }
        fam
    }
}
