//! Finite groups presented by full multiplication tables.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A finite group with elements `0..order`.
///
/// `mult[a * order + b]` is the product `a·b`. Groups built from permutations
/// use the convention `(a·b)(i) = a(b(i))`, so actions read as left actions.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mult: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    subgroups: OnceLock<Vec<Subgroup>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mult == other.mult
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

/// A subgroup, stored as its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup(Vec<usize>);

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.0.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.0.iter().all(|g| other.contains(*g))
    }

    pub(crate) fn from_sorted(elems: Vec<usize>) -> Self {
        Subgroup(elems)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table, validating the group axioms.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        let mut mult = Vec::with_capacity(order * order);
        for (a, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!("row {a} has length {}", row.len())));
            }
            for &c in row {
                if c >= order {
                    return Err(Error::InvalidGroup(format!("entry {c} out of range in row {a}")));
                }
                mult.push(c);
            }
        }
        let m = |a: usize, b: usize| mult[a * order + b];
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverse.push(inv);
        }
        Ok(FiniteGroup {
            name: name.into(),
            order,
            mult,
            identity,
            inverse,
            subgroups: OnceLock::new(),
        })
    }

    /// Builds the permutation group generated by `generators`, each a permutation of `0..degree`.
    ///
    /// Elements are numbered in breadth-first order from the identity, which is element 0.
    pub fn from_generators(
        name: impl Into<String>,
        degree: usize,
        generators: &[Vec<usize>],
    ) -> Result<Self> {
        for (i, p) in generators.iter().enumerate() {
            let mut seen = vec![false; degree];
            if p.len() != degree {
                return Err(Error::InvalidGroup(format!("generator {i} has wrong degree")));
            }
            for &x in p {
                if x >= degree || seen[x] {
                    return Err(Error::InvalidGroup(format!("generator {i} is not a permutation")));
                }
                seen[x] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let prod: Vec<usize> = elems[i].iter().map(|&x| g[x]).collect();
                if !index.contains_key(&prod) {
                    index.insert(prod.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(prod);
                }
            }
        }
        let table = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| index[&b.iter().map(|&x| a[x]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        Self::from_table(name, table)
    }

    pub fn trivial() -> Self {
        Self::from_table("trivial", vec![vec![0]]).expect("trivial group")
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(format!("C{n}"), table)
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n <= 1 {
            return Ok(Self::trivial());
        }
        let transposition: Vec<usize> = (0..n).map(|i| if i < 2 { 1 - i } else { i }).collect();
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_generators(format!("S{n}"), n, &[transposition, cycle])
    }

    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGroup("dihedral group needs n >= 3".into()));
        }
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_generators(format!("D{n}"), n, &[rotation, reflection])
    }

    /// Resolves names such as `trivial`, `c2`, `s3`, `d4`, `v4`.
    pub fn by_name(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::InvalidGroup(format!("unknown group `{name}`")))
        };
        match lower.as_str() {
            "trivial" | "1" | "c1" => Ok(Self::trivial()),
            "v4" | "klein" => Self::from_generators(
                "V4",
                4,
                &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]],
            ),
            _ if lower.starts_with('c') => Self::cyclic(parse(&lower[1..])?),
            _ if lower.starts_with('s') => Self::symmetric(parse(&lower[1..])?),
            _ if lower.starts_with('d') => Self::dihedral(parse(&lower[1..])?),
            _ => Err(Error::InvalidGroup(format!("unknown group `{name}`"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// The subgroup generated by `gens`.
    pub fn closure(&self, gens: impl IntoIterator<Item = usize>) -> Subgroup {
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut set = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            for &g in &gens {
                let p = self.mul(a, g);
                if set.insert(p) {
                    queue.push_back(p);
                }
            }
        }
        Subgroup(set.into_iter().collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup(vec![self.identity])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup(self.elements().collect())
    }

    /// `g H g⁻¹`.
    pub fn conjugate(&self, h: &Subgroup, g: usize) -> Subgroup {
        let gi = self.inv(g);
        let mut elems: Vec<usize> = h.0.iter().map(|&x| self.mul(self.mul(g, x), gi)).collect();
        elems.sort_unstable();
        Subgroup(elems)
    }

    /// All subgroups, sorted.
    pub fn subgroups(&self) -> &[Subgroup] {
        self.subgroups.get_or_init(|| {
            let mut found = BTreeSet::from([self.trivial_subgroup()]);
            let mut queue = VecDeque::from([self.trivial_subgroup()]);
            while let Some(h) = queue.pop_front() {
                for g in self.elements() {
                    if h.contains(g) {
                        continue;
                    }
                    let k = self.closure(h.0.iter().copied().chain([g]));
                    if found.insert(k.clone()) {
                        queue.push_back(k);
                    }
                }
            }
            found.into_iter().collect()
        })
    }

    /// Least conjugate of `h` in the subgroup order.
    pub fn canonical_conjugate(&self, h: &Subgroup) -> Subgroup {
        self.elements()
            .map(|g| self.conjugate(h, g))
            .min()
            .expect("group is nonempty")
    }

    /// One representative per conjugacy class of subgroups (the least conjugate), sorted
    /// by order and then by elements.
    pub fn subgroup_classes(&self) -> Vec<Subgroup> {
        let mut reps: Vec<Subgroup> = self
            .subgroups()
            .iter()
            .map(|h| self.canonical_conjugate(h))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        reps.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
        reps
    }
}
