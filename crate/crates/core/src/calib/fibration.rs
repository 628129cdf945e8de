//! Finite categories, functors between them, cartesian arrows and groupoid
//! (op)fibrations.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A finite category with explicit arrows. `comp[(g, f)]` is `g∘f` and is
/// defined exactly when `tgt(f) = src(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: usize,
    arrows: Vec<(usize, usize)>,
    ids: Vec<usize>,
    comp: HashMap<(usize, usize), usize>,
}

impl FiniteCategory {
    pub fn new(
        objects: usize,
        arrows: Vec<(usize, usize)>,
        ids: Vec<usize>,
        comp: HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::Shape(m));
        if ids.len() != objects {
            return bad("one identity per object".into());
        }
        for &(s, t) in &arrows {
            if s >= objects || t >= objects {
                return bad("arrow endpoint out of range".into());
            }
        }
        for (o, &i) in ids.iter().enumerate() {
            if arrows.get(i) != Some(&(o, o)) {
                return bad(format!("identity of object {o} is not an endomorphism of it"));
            }
        }
        for f in 0..arrows.len() {
            for g in 0..arrows.len() {
                let composable = arrows[f].1 == arrows[g].0;
                match comp.get(&(g, f)) {
                    Some(&h) if composable => {
                        if arrows.get(h) != Some(&(arrows[f].0, arrows[g].1)) {
                            return bad(format!("{g}∘{f} has the wrong endpoints"));
                        }
                    }
                    None if !composable => {}
                    _ => return bad(format!("composition table wrong at ({g}, {f})")),
                }
            }
        }
        let cat = FiniteCategory {
            objects,
            arrows,
            ids,
            comp,
        };
        for f in 0..cat.arrows.len() {
            let (s, t) = cat.arrows[f];
            if cat.compose(cat.ids[t], f) != f || cat.compose(f, cat.ids[s]) != f {
                return bad(format!("identity law fails at arrow {f}"));
            }
        }
        for f in 0..cat.arrows.len() {
            for g in cat.arrows_from(cat.arrows[f].1) {
                for h in cat.arrows_from(cat.arrows[g].1) {
                    if cat.compose(h, cat.compose(g, f)) != cat.compose(cat.compose(h, g), f) {
                        return bad(format!("associativity fails at ({h}, {g}, {f})"));
                    }
                }
            }
        }
        Ok(cat)
    }

    /// `n` objects and only identities.
    pub fn discrete(n: usize) -> Self {
        let arrows = (0..n).map(|o| (o, o)).collect();
        let comp = (0..n).map(|o| ((o, o), o)).collect();
        FiniteCategory {
            objects: n,
            arrows,
            ids: (0..n).collect(),
            comp,
        }
    }

    pub fn terminal() -> Self {
        Self::discrete(1)
    }

    /// `0 → 1`: arrows `id0 = 0`, `id1 = 1`, `a = 2`.
    pub fn interval() -> Self {
        let comp = [((0, 0), 0), ((1, 1), 1), ((2, 0), 2), ((1, 2), 2)]
            .into_iter()
            .collect();
        FiniteCategory {
            objects: 2,
            arrows: vec![(0, 0), (1, 1), (0, 1)],
            ids: vec![0, 1],
            comp,
        }
    }

    /// The one-object category whose arrows are the elements of `g`.
    pub fn from_group(g: &FiniteGroup) -> Self {
        let mut comp = HashMap::new();
        for a in g.elements() {
            for b in g.elements() {
                comp.insert((a, b), g.mul(a, b));
            }
        }
        FiniteCategory {
            objects: 1,
            arrows: vec![(0, 0); g.order()],
            ids: vec![g.identity()],
            comp,
        }
    }

    pub fn opposite(&self) -> Self {
        FiniteCategory {
            objects: self.objects,
            arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect(),
            ids: self.ids.clone(),
            comp: self.comp.iter().map(|(&(g, f), &h)| ((f, g), h)).collect(),
        }
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.arrows[f].0
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.arrows[f].1
    }

    pub fn id(&self, o: usize) -> usize {
        self.ids[o]
    }

    /// `g∘f`; panics if not composable.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.comp[&(g, f)]
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f] == (a, b)).collect()
    }

    fn arrows_from(&self, a: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f].0 == a).collect()
    }

    pub fn is_iso(&self, f: usize) -> bool {
        let (s, t) = self.arrows[f];
        self.hom(t, s)
            .into_iter()
            .any(|g| self.compose(g, f) == self.ids[s] && self.compose(f, g) == self.ids[t])
    }
}

#[derive(Clone, Debug)]
pub struct FunctorData {
    pub dom: FiniteCategory,
    pub cod: FiniteCategory,
    pub on_objects: Vec<usize>,
    pub on_arrows: Vec<usize>,
}

impl FunctorData {
    pub fn new(
        dom: FiniteCategory,
        cod: FiniteCategory,
        on_objects: Vec<usize>,
        on_arrows: Vec<usize>,
    ) -> Result<Self> {
        let bad = |m: &str| Err(Error::Shape(m.to_string()));
        if on_objects.len() != dom.objects() || on_arrows.len() != dom.arrow_count() {
            return bad("functor tables have the wrong length");
        }
        if on_objects.iter().any(|&o| o >= cod.objects())
            || on_arrows.iter().any(|&f| f >= cod.arrow_count())
        {
            return bad("functor table entry out of range");
        }
        for f in 0..dom.arrow_count() {
            let pf = on_arrows[f];
            if cod.src(pf) != on_objects[dom.src(f)] || cod.tgt(pf) != on_objects[dom.tgt(f)] {
                return bad("functor does not respect endpoints");
            }
        }
        for o in 0..dom.objects() {
            if on_arrows[dom.id(o)] != cod.id(on_objects[o]) {
                return bad("functor does not preserve identities");
            }
        }
        for (&(g, f), &h) in &dom.comp {
            if on_arrows[h] != cod.compose(on_arrows[g], on_arrows[f]) {
                return bad("functor does not preserve composition");
            }
        }
        Ok(FunctorData {
            dom,
            cod,
            on_objects,
            on_arrows,
        })
    }

    pub fn identity(c: &FiniteCategory) -> Self {
        FunctorData {
            dom: c.clone(),
            cod: c.clone(),
            on_objects: (0..c.objects()).collect(),
            on_arrows: (0..c.arrow_count()).collect(),
        }
    }

    /// The unique functor to the terminal category.
    pub fn to_terminal(c: &FiniteCategory) -> Self {
        FunctorData {
            dom: c.clone(),
            cod: FiniteCategory::terminal(),
            on_objects: vec![0; c.objects()],
            on_arrows: vec![0; c.arrow_count()],
        }
    }

    pub fn opposite(&self) -> Self {
        FunctorData {
            dom: self.dom.opposite(),
            cod: self.cod.opposite(),
            on_objects: self.on_objects.clone(),
            on_arrows: self.on_arrows.clone(),
        }
    }
}

/// Whether `kappa: z → x` is cartesian: for every object `k` the square
/// `E(k,z) → E(k,x)`, `B(pk,pz) → B(pk,px)` is a pullback of sets.
pub fn is_cartesian(p: &FunctorData, kappa: usize) -> bool {
    let e = &p.dom;
    let b = &p.cod;
    let (z, x) = (e.src(kappa), e.tgt(kappa));
    let pk = p.on_arrows[kappa];
    (0..e.objects()).all(|k| {
        let pko = p.on_objects[k];
        let left = e.hom(k, z);
        let mut images: Vec<(usize, usize)> = left
            .iter()
            .map(|&a| (e.compose(kappa, a), p.on_arrows[a]))
            .collect();
        let mut corner: Vec<(usize, usize)> = Vec::new();
        for h in e.hom(k, x) {
            for beta in b.hom(pko, p.on_objects[z]) {
                if p.on_arrows[h] == b.compose(pk, beta) {
                    corner.push((h, beta));
                }
            }
        }
        images.sort_unstable();
        let injective = images.windows(2).all(|w| w[0] != w[1]);
        corner.sort_unstable();
        injective && images == corner
    })
}

pub fn is_groupoid_fibration(p: &FunctorData) -> bool {
    let e = &p.dom;
    let b = &p.cod;
    if !(0..e.arrow_count()).all(|f| is_cartesian(p, f)) {
        return false;
    }
    (0..e.objects()).all(|x| {
        let px = p.on_objects[x];
        (0..b.arrow_count())
            .filter(|&phi| b.tgt(phi) == px)
            .all(|phi| {
                let bo = b.src(phi);
                (0..e.arrow_count()).filter(|&k| e.tgt(k) == x).any(|kappa| {
                    let pz = p.on_objects[e.src(kappa)];
                    b.hom(bo, pz).into_iter().any(|theta| {
                        b.is_iso(theta) && b.compose(p.on_arrows[kappa], theta) == phi
                    })
                })
            })
    })
}

pub fn is_groupoid_opfibration(p: &FunctorData) -> bool {
    is_groupoid_fibration(&p.opposite())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Uniqueness-of-factorization reading of the pullback condition.
    fn cartesian_oracle(p: &FunctorData, kappa: usize) -> bool {
        let e = &p.dom;
        let b = &p.cod;
        let z = e.src(kappa);
        (0..e.objects()).all(|k| {
            for h in e.hom(k, e.tgt(kappa)) {
                for beta in b.hom(p.on_objects[k], p.on_objects[z]) {
                    if p.on_arrows[h] != b.compose(p.on_arrows[kappa], beta) {
                        continue;
                    }
                    let lifts = e
                        .hom(k, z)
                        .into_iter()
                        .filter(|&a| e.compose(kappa, a) == h && p.on_arrows[a] == beta)
                        .count();
                    if lifts != 1 {
                        return false;
                    }
                }
            }
            true
        })
    }

    fn interval_endpoints() -> FunctorData {
        FunctorData::new(
            FiniteCategory::discrete(2),
            FiniteCategory::interval(),
            vec![0, 1],
            vec![0, 1],
        )
        .unwrap()
    }

    fn all_functors() -> Vec<FunctorData> {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let bs3 = FiniteCategory::from_group(&s3);
        let bc2 = FiniteCategory::from_group(&c2);
        // sign homomorphism S3 → C2 on arrows
        let sign: Vec<usize> = s3
            .elements()
            .map(|g| {
                let sq = s3.mul(g, g);
                usize::from(sq == s3.identity() && g != s3.identity())
            })
            .collect();
        vec![
            FunctorData::identity(&FiniteCategory::interval()),
            FunctorData::to_terminal(&FiniteCategory::interval()),
            FunctorData::to_terminal(&bc2),
            FunctorData::to_terminal(&FiniteCategory::discrete(3)),
            interval_endpoints(),
            FunctorData::new(bs3, bc2, vec![0], sign).unwrap(),
            FunctorData::new(
                FiniteCategory::terminal(),
                FiniteCategory::interval(),
                vec![1],
                vec![1],
            )
            .unwrap(),
        ]
    }

    #[test]
    fn tables_validate() {
        for c in [
            FiniteCategory::interval(),
            FiniteCategory::discrete(3),
            FiniteCategory::from_group(&FiniteGroup::dihedral(4).unwrap()),
            FiniteCategory::interval().opposite(),
        ] {
            FiniteCategory::new(c.objects, c.arrows.clone(), c.ids.clone(), c.comp.clone()).unwrap();
        }
        let mut broken = FiniteCategory::interval();
        broken.comp.remove(&(1, 2));
        assert!(FiniteCategory::new(2, broken.arrows, broken.ids, broken.comp).is_err());
    }

    #[test]
    fn cartesian_matches_oracle() {
        for p in all_functors() {
            for k in 0..p.dom.arrow_count() {
                assert_eq!(is_cartesian(&p, k), cartesian_oracle(&p, k));
            }
        }
    }

    #[test]
    fn identity_functor_is_fibration() {
        let p = FunctorData::identity(&FiniteCategory::interval());
        assert!(is_groupoid_fibration(&p));
        assert!(is_groupoid_opfibration(&p));
    }

    #[test]
    fn interval_to_point() {
        let p = FunctorData::to_terminal(&FiniteCategory::interval());
        // with k = 1: E(1,0) is empty while the corner has one element
        assert!(!is_cartesian(&p, 2));
        assert!(is_cartesian(&p, 0) && is_cartesian(&p, 1));
        assert!(!is_groupoid_fibration(&p));
    }

    #[test]
    fn groupoid_over_point_is_fibration() {
        let c2 = FiniteCategory::from_group(&FiniteGroup::cyclic(2).unwrap());
        assert!(is_groupoid_fibration(&FunctorData::to_terminal(&c2)));
    }

    #[test]
    fn endpoints_into_interval_fail_lifting() {
        let p = interval_endpoints();
        assert!((0..2).all(|f| is_cartesian(&p, f)));
        assert!(!is_groupoid_fibration(&p));
        assert!(!is_groupoid_opfibration(&p));
    }

    #[test]
    fn surjective_group_hom_is_fibration() {
        let p = &all_functors()[5];
        assert!(is_groupoid_fibration(p));
        assert!(is_groupoid_opfibration(p));
    }
}
