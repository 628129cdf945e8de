//! Words in `Δ`, `Π`, `Σ` and their normalization to the shape `Σ∘Π∘Δ`.
//!
//! Words are listed in application order: the first generator acts first.

use std::fmt;

use serde::Serialize;

use super::polynomial::Polynomial;
use crate::calib::MorphismClass;
use crate::error::{boundary, Error, Result};
use crate::finact::{
    counit_e, delta, pi_full, pullback, sigma, Evaluation, GMap, GSet, SliceMorphism, SliceObject,
};

/// Step cap for [`normalize`].
pub const DEFAULT_STEP_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gen {
    /// `Δ_f`, from slices over `f.cod` to slices over `f.dom`.
    Delta(GMap),
    /// `Π_f`, from slices over `f.dom` to slices over `f.cod`.
    Pi(GMap),
    /// `Σ_f`, from slices over `f.dom` to slices over `f.cod`.
    Sigma(GMap),
}

impl Gen {
    pub fn map(&self) -> &GMap {
        match self {
            Gen::Delta(f) | Gen::Pi(f) | Gen::Sigma(f) => f,
        }
    }

    pub fn src(&self) -> &GSet {
        match self {
            Gen::Delta(f) => f.cod(),
            Gen::Pi(f) | Gen::Sigma(f) => f.dom(),
        }
    }

    pub fn tgt(&self) -> &GSet {
        match self {
            Gen::Delta(f) => f.dom(),
            Gen::Pi(f) | Gen::Sigma(f) => f.cod(),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Gen::Delta(_) => 0,
            Gen::Pi(_) => 1,
            Gen::Sigma(_) => 2,
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Gen::Delta(_) => "Delta",
            Gen::Pi(_) => "Pi",
            Gen::Sigma(_) => "Sigma",
        }
    }

    pub fn apply(&self, x: &SliceObject) -> Result<SliceObject> {
        match self {
            Gen::Delta(f) => delta(f, x),
            Gen::Pi(f) => Ok(pi_full(f, x, crate::finact::DEFAULT_MAX_POINTS)?.slice),
            Gen::Sigma(f) => sigma(f, x),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}->{}]", self.symbol(), self.src().size(), self.tgt().size())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyExpr {
    src: GSet,
    gens: Vec<Gen>,
}

impl PolyExpr {
    pub fn new(src: GSet, gens: Vec<Gen>) -> Result<Self> {
        let mut at = &src;
        for g in &gens {
            if g.src() != at {
                return Err(boundary(format!("word does not chain at {g}")));
            }
            at = g.tgt();
        }
        Ok(PolyExpr { src, gens })
    }

    /// `Δ_r`, `Π_n`, `Σ_t`.
    pub fn of_polynomial(p: &Polynomial) -> Self {
        PolyExpr {
            src: p.src().clone(),
            gens: vec![Gen::Delta(p.r().clone()), Gen::Pi(p.n().clone()), Gen::Sigma(p.t().clone())],
        }
    }

    pub fn then(&self, next: &PolyExpr) -> Result<PolyExpr> {
        let mut gens = self.gens.clone();
        gens.extend(next.gens.iter().cloned());
        PolyExpr::new(self.src.clone(), gens)
    }

    pub fn src(&self) -> &GSet {
        &self.src
    }

    pub fn tgt(&self) -> &GSet {
        self.gens.last().map_or(&self.src, Gen::tgt)
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    pub fn is_normal(&self) -> bool {
        self.gens.windows(2).all(|w| w[0].rank() < w[1].rank())
    }

    pub fn apply(&self, x: &SliceObject) -> Result<SliceObject> {
        self.gens.iter().try_fold(x.clone(), |acc, g| g.apply(&acc))
    }

    /// Reads a normal word as a polynomial, filling in identities.
    pub fn to_polynomial(&self) -> Result<Polynomial> {
        if !self.is_normal() {
            return Err(Error::Shape(format!("word {self} is not in normal form")));
        }
        let mut r = GMap::identity(&self.src);
        let mut n = None;
        let mut t = None;
        for g in &self.gens {
            match g {
                Gen::Delta(f) => r = f.clone(),
                Gen::Pi(f) => n = Some(f.clone()),
                Gen::Sigma(f) => t = Some(f.clone()),
            }
        }
        let n = n.unwrap_or_else(|| GMap::identity(r.dom()));
        let t = t.unwrap_or_else(|| GMap::identity(n.cod()));
        Polynomial::new(r, n, t)
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "id[{}]", self.src.size());
        }
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, " ; ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// One rule application in a normalization transcript.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub rule: String,
    pub position: usize,
    pub before: String,
    pub after: String,
}

/// The data `(Π_u a, ū, e)` moving `Π_u` past `Σ_a`.
#[derive(Clone, Debug)]
pub struct Distribution {
    pub u: GMap,
    pub a: GMap,
    pub eval: Evaluation,
}

impl Distribution {
    /// `Π_u a: B → U`.
    pub fn pia(&self) -> &GMap {
        self.eval.pia()
    }

    /// `ū: P → B`.
    pub fn ubar(&self) -> &GMap {
        &self.eval.ubar
    }

    /// `e: P → A`.
    pub fn e(&self) -> &GMap {
        &self.eval.e
    }

    /// `Π_u Σ_a c`.
    pub fn lhs(&self, c: &SliceObject) -> Result<SliceObject> {
        Ok(pi_full(&self.u, &sigma(&self.a, c)?, crate::finact::DEFAULT_MAX_POINTS)?.slice)
    }

    /// `Σ_{Π_u a} Π_ū Δ_e c`.
    pub fn rhs(&self, c: &SliceObject) -> Result<SliceObject> {
        let inner = pi_full(self.ubar(), &delta(self.e(), c)?, crate::finact::DEFAULT_MAX_POINTS)?;
        sigma(self.pia(), &inner.slice)
    }

    /// The canonical comparison `Π_u Σ_a c → Σ_{Π_u a} Π_ū Δ_e c`: a section
    /// `σ` over `x` goes to the section `a∘σ` of `a` together with the lift of
    /// `σ` to the pullback along `e`.
    pub fn comparison(&self, c: &SliceObject) -> Result<SliceMorphism> {
        if c.base() != self.a.dom() {
            return Err(boundary("distributive law: probe is not over the domain of a"));
        }
        let bound = crate::finact::DEFAULT_MAX_POINTS;
        let lhs = pi_full(&self.u, &sigma(&self.a, c)?, bound)?;
        let dc_pb = pullback(self.e(), c.map())?;
        let dc = SliceObject::new(dc_pb.left.clone());
        let inner = pi_full(self.ubar(), &dc, bound)?;
        let rhs = sigma(self.pia(), &inner.slice)?;
        let b_data = &self.eval.product;
        let p_data = &self.eval.pullback;
        let table = (0..lhs.slice.total().size())
            .map(|i| {
                let (x, sec) = lhs.section(i);
                let fiber = lhs.fiber(*x);
                let through_a: Vec<usize> = sec.iter().map(|&z| c.map().apply(z)).collect();
                let b = b_data.lookup(*x, &through_a).expect("section of a");
                let lifted: Vec<usize> = inner
                    .fiber(b)
                    .iter()
                    .map(|&p| {
                        let (s, _) = p_data.point(p);
                        let k = fiber.iter().position(|&f| f == s).expect("fiber point");
                        dc_pb.index(p, sec[k]).expect("lift along e")
                    })
                    .collect();
                inner.lookup(b, &lifted).expect("section of the pulled back probe")
            })
            .collect();
        SliceMorphism::new(
            lhs.slice.clone(),
            rhs.clone(),
            GMap::new_unchecked(lhs.slice.total().clone(), rhs.total().clone(), table),
        )
    }
}

/// `distribute(u, a)` for `u: S → U` in `ℒ` and `a: A → S` in `ℛ`.
pub fn distribute(l: &MorphismClass, r: &MorphismClass, u: &GMap, a: &GMap) -> Result<Distribution> {
    l.require(u)?;
    r.require(a)?;
    let eval = counit_e(u, &SliceObject::new(a.clone()))?;
    r.require(eval.pia())?;
    Ok(Distribution {
        u: u.clone(),
        a: a.clone(),
        eval,
    })
}

/// For each probe `c` over `A`: the comparison `Π_u Σ_a c → Σ_{Π_u a} Π_ū Δ_e c`
/// is an isomorphism of slices, and it commutes with every slice map between
/// consecutive probes (up to `limit` maps per pair).
#[allow(clippy::too_many_arguments)]
pub fn check_distributive_law(
    l: &MorphismClass,
    r: &MorphismClass,
    u: &GMap,
    a: &GMap,
    probes: &[SliceObject],
    limit: usize,
    iso: &mut crate::report::CheckOutcome,
    natural: &mut crate::report::CheckOutcome,
) {
    let witness = |c: &SliceObject| format!("u={:?} a={:?} probe {:?}", u.table(), a.table(), c.map().table());
    let d = match distribute(l, r, u, a) {
        Ok(d) => d,
        Err(e) => {
            iso.record(false, || format!("u={:?} a={:?}: {e}", u.table(), a.table()));
            return;
        }
    };
    let mut phis = Vec::with_capacity(probes.len());
    for c in probes {
        let phi = (|| -> Result<SliceMorphism> {
            let phi = d.comparison(c)?;
            if phi.src != d.lhs(c)? || phi.tgt != d.rhs(c)? {
                return Err(boundary("comparison has the wrong boundary"));
            }
            Ok(phi)
        })();
        iso.record_result(phi.as_ref(), |p| p.map.is_iso(), || witness(c));
        phis.push(phi.ok());
    }
    for (i, pair) in probes.windows(2).enumerate() {
        let (Some(p1), Some(p2)) = (&phis[i], &phis[i + 1]) else { continue };
        let (c1, c2) = (&pair[0], &pair[1]);
        let r = (|| -> Result<bool> {
            let maps = crate::finact::equivariant_maps(
                c1.total(),
                c2.total(),
                &|x, y| c1.map().apply(x) == c2.map().apply(y),
                limit,
            )?;
            for m in maps {
                let m = SliceMorphism::new(c1.clone(), c2.clone(), m)?;
                let left = crate::finact::pi_mor(u, &crate::finact::sigma_mor(a, &m)?)?;
                let right = crate::finact::sigma_mor(
                    d.pia(),
                    &crate::finact::pi_mor(d.ubar(), &crate::finact::delta_mor(d.e(), &m)?)?,
                )?;
                if left.then(p2)?.map != p1.then(&right)?.map {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        natural.record_result(r, |ok| *ok, || format!("{} -> {:?}", witness(c1), c2.map().table()));
    }
}

/// Normalizes a word, innermost pair first.
///
/// Identity generators are dropped; same-kind neighbours fuse; `Σ;Δ` and `Π;Δ` exchange through the pullback
/// square; `Σ;Π` distributes. Each `Π` needs its map in `l`, each `Σ` in `r`.
pub fn normalize(
    l: &MorphismClass,
    r: &MorphismClass,
    word: &PolyExpr,
    step_cap: usize,
) -> Result<(PolyExpr, Vec<RewriteStep>)> {
    let mut cur = word.clone();
    let mut transcript = Vec::new();
    loop {
        if let Some(i) = cur.gens.iter().position(|g| g.map().is_identity()) {
            if transcript.len() >= step_cap {
                return Err(Error::RewriteDiverged(step_cap));
            }
            let before = cur.gens[i].to_string();
            cur.gens.remove(i);
            transcript.push(RewriteStep {
                rule: "drop-identity".into(),
                position: i,
                before,
                after: String::new(),
            });
            continue;
        }
        let Some(i) = cur.gens.windows(2).position(|w| w[0].rank() >= w[1].rank()) else {
            break;
        };
        if transcript.len() >= step_cap {
            return Err(Error::RewriteDiverged(step_cap));
        }
        let (rule, replacement) = rewrite_pair(l, r, &cur.gens[i], &cur.gens[i + 1])?;
        let before = format!("{} ; {}", cur.gens[i], cur.gens[i + 1]);
        let after = replacement.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ; ");
        cur.gens.splice(i..i + 2, replacement);
        transcript.push(RewriteStep {
            rule: rule.into(),
            position: i,
            before,
            after,
        });
    }
    for g in &cur.gens {
        match g {
            Gen::Pi(f) => l.require(f)?,
            Gen::Sigma(f) => r.require(f)?,
            Gen::Delta(_) => {}
        }
    }
    Ok((cur, transcript))
}

fn rewrite_pair(l: &MorphismClass, r: &MorphismClass, first: &Gen, second: &Gen) -> Result<(&'static str, Vec<Gen>)> {
    Ok(match (first, second) {
        (Gen::Delta(f), Gen::Delta(g)) => ("fuse-delta", vec![Gen::Delta(f.compose(g)?)]),
        (Gen::Pi(f), Gen::Pi(g)) => ("fuse-pi", vec![Gen::Pi(g.compose(f)?)]),
        (Gen::Sigma(f), Gen::Sigma(g)) => ("fuse-sigma", vec![Gen::Sigma(g.compose(f)?)]),
        (Gen::Sigma(t), Gen::Delta(g)) => {
            let pb = pullback(t, g)?;
            ("exchange-sigma-delta", vec![Gen::Delta(pb.left), Gen::Sigma(pb.right)])
        }
        (Gen::Pi(n), Gen::Delta(g)) => {
            let pb = pullback(n, g)?;
            ("exchange-pi-delta", vec![Gen::Delta(pb.left), Gen::Pi(pb.right)])
        }
        (Gen::Sigma(a), Gen::Pi(u)) => {
            let d = distribute(l, r, u, a)?;
            (
                "distribute",
                vec![Gen::Delta(d.e().clone()), Gen::Pi(d.ubar().clone()), Gen::Sigma(d.pia().clone())],
            )
        }
        _ => unreachable!("pair is already in order"),
    })
}

/// A composite polynomial with the transcript that produced it.
#[derive(Clone, Debug)]
pub struct PolyComposite {
    pub poly: Polynomial,
    pub transcript: Vec<RewriteStep>,
}

/// `p` then `q`, by normalizing `Δ_r Π_n Σ_t Δ_r' Π_n' Σ_t'`.
pub fn compose_poly(l: &MorphismClass, r: &MorphismClass, p: &Polynomial, q: &Polynomial) -> Result<PolyComposite> {
    if p.tgt() != q.src() {
        return Err(boundary("polynomials do not compose: target and source differ"));
    }
    p.require(l, r)?;
    q.require(l, r)?;
    let word = PolyExpr::of_polynomial(p).then(&PolyExpr::of_polynomial(q))?;
    let (normal, transcript) = normalize(l, r, &word, DEFAULT_STEP_CAP)?;
    Ok(PolyComposite {
        poly: normal.to_polynomial()?,
        transcript,
    })
}
