//! Polynomials `X ← A → B → Y`, their morphisms, and the identification with
//! spans of spans.

use serde::Serialize;

use crate::calib::MorphismClass;
use crate::error::{boundary, Error, Result};
use crate::finact::{equivariant_maps, find_iso_labelled, pullback, GMap, GSet, Pullback};
use crate::span::{compose_full, Span, SpanMorphism};

/// `X ←r A →n B →t Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    r: GMap,
    n: GMap,
    t: GMap,
}

impl Polynomial {
    pub fn new(r: GMap, n: GMap, t: GMap) -> Result<Self> {
        if r.dom() != n.dom() {
            return Err(boundary("polynomial: r and n have different domains"));
        }
        if n.cod() != t.dom() {
            return Err(boundary("polynomial: n does not land in the domain of t"));
        }
        Ok(Polynomial { r, n, t })
    }

    /// A polynomial with `n ∈ ℒ` and `t ∈ ℛ`.
    pub fn in_classes(l: &MorphismClass, rc: &MorphismClass, r: GMap, n: GMap, t: GMap) -> Result<Self> {
        let p = Polynomial::new(r, n, t)?;
        p.require(l, rc)?;
        Ok(p)
    }

    pub fn require(&self, l: &MorphismClass, rc: &MorphismClass) -> Result<()> {
        l.require(&self.n)?;
        rc.require(&self.t)
    }

    pub fn identity(x: &GSet) -> Self {
        let id = GMap::identity(x);
        Polynomial {
            r: id.clone(),
            n: id.clone(),
            t: id,
        }
    }

    /// `(X ← A →1 A → Y)`.
    pub fn from_span(p: &Span) -> Self {
        Polynomial {
            r: p.left().clone(),
            n: GMap::identity(p.apex()),
            t: p.right().clone(),
        }
    }

    pub fn r(&self) -> &GMap {
        &self.r
    }

    pub fn n(&self) -> &GMap {
        &self.n
    }

    pub fn t(&self) -> &GMap {
        &self.t
    }

    pub fn src(&self) -> &GSet {
        self.r.cod()
    }

    pub fn tgt(&self) -> &GSet {
        self.t.cod()
    }

    /// `A`
    pub fn exponent(&self) -> &GSet {
        self.r.dom()
    }

    /// `B`
    pub fn middle(&self) -> &GSet {
        self.t.dom()
    }
}

/// `(g, ℓ): p ⇒ p'` with `g: B → B'` and `ℓ: P → A`, where `P` is the
/// pullback of `n'` along `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMorphism {
    pub src: Polynomial,
    pub tgt: Polynomial,
    pub g: GMap,
    pub ell: GMap,
}

impl PolyMorphism {
    pub fn new(src: Polynomial, tgt: Polynomial, g: GMap, ell: GMap) -> Result<Self> {
        if src.src() != tgt.src() || src.tgt() != tgt.tgt() {
            return Err(boundary("polynomial morphism between different boundaries"));
        }
        if g.dom() != src.middle() || g.cod() != tgt.middle() {
            return Err(boundary("polynomial morphism: g does not run B → B'"));
        }
        if tgt.t.compose(&g)?.table() != src.t.table() {
            return Err(boundary("polynomial morphism: t'∘g differs from t"));
        }
        let pb = morphism_pullback(&tgt, &g)?;
        if ell.dom() != &pb.apex || ell.cod() != src.exponent() {
            return Err(boundary("polynomial morphism: ell does not run P → A"));
        }
        if src.n.compose(&ell)?.table() != pb.right.table() {
            return Err(boundary("polynomial morphism: n∘ell differs from the pullback projection"));
        }
        if src.r.compose(&ell)?.table() != tgt.r.compose(&pb.left)?.table() {
            return Err(boundary("polynomial morphism: r∘ell differs from r'∘g_n'"));
        }
        Ok(PolyMorphism { src, tgt, g, ell })
    }

    pub fn identity(p: &Polynomial) -> Self {
        let pb = morphism_pullback(p, &GMap::identity(p.middle())).expect("identity pullback");
        PolyMorphism {
            src: p.clone(),
            tgt: p.clone(),
            g: GMap::identity(p.middle()),
            ell: pb.left,
        }
    }
}

/// `P = A' ×_{B'} B` with `left = g_{n'}: P → A'` and `right = n'_g: P → B`.
pub fn morphism_pullback(tgt: &Polynomial, g: &GMap) -> Result<Pullback> {
    pullback(&tgt.n, g)
}

/// All morphisms `p ⇒ p'`.
pub fn enumerate_poly_morphisms(p: &Polynomial, q: &Polynomial, limit: usize) -> Result<Vec<PolyMorphism>> {
    if p.src() != q.src() || p.tgt() != q.tgt() {
        return Err(boundary("polynomial morphisms between different boundaries"));
    }
    let mut out = Vec::new();
    let gs = equivariant_maps(p.middle(), q.middle(), &|b, b2| p.t.apply(b) == q.t.apply(b2), limit)?;
    for g in gs {
        let pb = morphism_pullback(q, &g)?;
        let ells = equivariant_maps(
            &pb.apex,
            p.exponent(),
            &|x, a| p.n.apply(a) == pb.right.apply(x) && p.r.apply(a) == q.r.apply(pb.left.apply(x)),
            limit,
        )?;
        for ell in ells {
            out.push(PolyMorphism {
                src: p.clone(),
                tgt: q.clone(),
                g: g.clone(),
                ell,
            });
        }
    }
    Ok(out)
}

/// Legwise isos `α: A → A'`, `β: B → B'` commuting with `r`, `n`, `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyIso {
    pub alpha: GMap,
    pub beta: GMap,
}

pub fn poly_iso(p: &Polynomial, q: &Polynomial) -> Result<Option<PolyIso>> {
    if p.src() != q.src() || p.tgt() != q.tgt() {
        return Ok(None);
    }
    if p.middle().size() != q.middle().size() || p.exponent().size() != q.exponent().size() {
        return Ok(None);
    }
    let betas = equivariant_maps(
        p.middle(),
        q.middle(),
        &|b, b2| p.t.apply(b) == q.t.apply(b2),
        crate::completion::HOM_LIMIT,
    )?;
    for beta in betas.into_iter().filter(GMap::is_iso) {
        let found = find_iso_labelled(
            p.exponent(),
            &|a| vec![p.r.apply(a), beta.apply(p.n.apply(a))],
            q.exponent(),
            &|a| vec![q.r.apply(a), q.n.apply(a)],
        );
        if let Some(table) = found {
            let alpha = GMap::new_unchecked(p.exponent().clone(), q.exponent().clone(), table);
            return Ok(Some(PolyIso { alpha, beta }));
        }
    }
    Ok(None)
}

/// A polynomial read as a span in spans:
/// `X ←(n, A, r)− B −(1, B, t)→ Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanOfSpans {
    pub apex: GSet,
    /// `B ←n A →r X`
    pub to_src: Span,
    /// `B ←1 B →t Y`
    pub to_tgt: Span,
}

impl SpanOfSpans {
    pub fn new(apex: GSet, to_src: Span, to_tgt: Span) -> Result<Self> {
        if to_src.src() != &apex || to_tgt.src() != &apex {
            return Err(boundary("span of spans: legs do not start at the apex"));
        }
        Ok(SpanOfSpans { apex, to_src, to_tgt })
    }
}

pub fn poly_to_spanspan(p: &Polynomial) -> SpanOfSpans {
    SpanOfSpans {
        apex: p.middle().clone(),
        to_src: Span::new(p.n.clone(), p.r.clone()).expect("common domain"),
        to_tgt: Span::new(GMap::identity(p.middle()), p.t.clone()).expect("common domain"),
    }
}

pub fn spanspan_to_poly(s: &SpanOfSpans) -> Result<Polynomial> {
    if !s.to_tgt.left().is_identity() {
        return Err(Error::Shape("right outer leg is not of the form (1, B, t)".into()));
    }
    if s.to_src.src() != &s.apex {
        return Err(Error::Shape("left outer leg does not start at the apex".into()));
    }
    Polynomial::new(s.to_src.right().clone(), s.to_src.left().clone(), s.to_tgt.right().clone())
}

/// The span-of-spans picture of a polynomial morphism: the middle span
/// `(1, B, g)`, the invertible cell on the `Y` side and the cell `λ` on the
/// `X` side, as a map of spans from `(1, B, g); (n', A', r')` to `(n, A, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanSpan2Cell {
    pub src: SpanOfSpans,
    pub tgt: SpanOfSpans,
    pub middle: Span,
    pub y_iso: SpanMorphism,
    pub lambda: SpanMorphism,
}

pub fn translate_2cell(m: &PolyMorphism) -> Result<SpanSpan2Cell> {
    let (src, tgt) = (poly_to_spanspan(&m.src), poly_to_spanspan(&m.tgt));
    let middle = Span::new(GMap::identity(m.src.middle()), m.g.clone())?;
    let y_side = compose_full(&middle, &tgt.to_tgt)?;
    let y_table = src
        .to_tgt
        .apex()
        .points()
        .map(|b| y_side.apex.index(b, m.g.apply(b)).expect("graph point"))
        .collect();
    let y_iso = SpanMorphism::new(
        src.to_tgt.clone(),
        y_side.span.clone(),
        GMap::new_unchecked(src.to_tgt.apex().clone(), y_side.span.apex().clone(), y_table),
    )?;
    let x_side = compose_full(&middle, &tgt.to_src)?;
    let pb = morphism_pullback(&m.tgt, &m.g)?;
    // the composite's apex lists (b, a'), the morphism pullback (a', b)
    let lambda_table = x_side
        .apex
        .points()
        .iter()
        .map(|&(b, a2)| m.ell.apply(pb.index(a2, b).expect("matching point")))
        .collect();
    let lambda = SpanMorphism::new(
        x_side.span.clone(),
        src.to_src.clone(),
        GMap::new_unchecked(x_side.span.apex().clone(), m.src.exponent().clone(), lambda_table),
    )?;
    Ok(SpanSpan2Cell {
        src,
        tgt,
        middle,
        y_iso,
        lambda,
    })
}

pub fn untranslate_2cell(c: &SpanSpan2Cell) -> Result<PolyMorphism> {
    if !c.middle.left().is_identity() {
        return Err(Error::Shape("middle span is not of the form (1, B, g)".into()));
    }
    let (p, q) = (spanspan_to_poly(&c.src)?, spanspan_to_poly(&c.tgt)?);
    let g = c.middle.right().clone();
    let x_side = compose_full(&c.middle, &c.tgt.to_src)?;
    if c.lambda.src != x_side.span || c.lambda.tgt != c.src.to_src {
        return Err(Error::Shape("lambda does not run between the expected spans".into()));
    }
    let pb = morphism_pullback(&q, &g)?;
    let ell_table = pb
        .points()
        .iter()
        .map(|&(a2, b)| c.lambda.map.apply(x_side.apex.index(b, a2).expect("matching point")))
        .collect();
    let ell = GMap::new_unchecked(pb.apex.clone(), p.exponent().clone(), ell_table);
    PolyMorphism::new(p, q, g, ell)
}

/// All span-of-spans cells between two polynomials, enumerated on the span side.
pub fn enumerate_spanspan_2cells(p: &Polynomial, q: &Polynomial, limit: usize) -> Result<Vec<SpanSpan2Cell>> {
    let (src, tgt) = (poly_to_spanspan(p), poly_to_spanspan(q));
    let mut out = Vec::new();
    for g in equivariant_maps(p.middle(), q.middle(), &|_, _| true, limit)? {
        let middle = Span::new(GMap::identity(p.middle()), g.clone())?;
        let y_side = compose_full(&middle, &tgt.to_tgt)?;
        // the Y-side cell is the graph of g, invertible exactly when t'∘g = t
        let apex = &y_side.apex;
        let graph = equivariant_maps(src.to_tgt.apex(), y_side.span.apex(), &|b, x| apex.point(x).0 == b, limit)?
            .into_iter()
            .find_map(|m| SpanMorphism::new(src.to_tgt.clone(), y_side.span.clone(), m).ok());
        let Some(y_iso) = graph.filter(SpanMorphism::is_iso) else {
            continue;
        };
        let x_side = compose_full(&middle, &tgt.to_src)?;
        let (xl, xr) = (x_side.span.left(), x_side.span.right());
        let maps = equivariant_maps(
            x_side.span.apex(),
            p.exponent(),
            &|x, a| p.n.apply(a) == xl.apply(x) && p.r.apply(a) == xr.apply(x),
            limit,
        )?;
        for m in maps {
            out.push(SpanSpan2Cell {
                src: src.clone(),
                tgt: tgt.clone(),
                middle: middle.clone(),
                y_iso: y_iso.clone(),
                lambda: SpanMorphism::new(x_side.span.clone(), src.to_src.clone(), m)?,
            });
        }
    }
    Ok(out)
}

/// Sizes of both enumerations and whether translation matches them up bijectively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellCorrespondence {
    pub poly_side: usize,
    pub span_side: usize,
    pub bijective: bool,
    pub round_trips: bool,
}

pub fn check_cell_correspondence(p: &Polynomial, q: &Polynomial, limit: usize) -> Result<CellCorrespondence> {
    let polys = enumerate_poly_morphisms(p, q, limit)?;
    let spans = enumerate_spanspan_2cells(p, q, limit)?;
    let mut hit = vec![false; spans.len()];
    let mut bijective = polys.len() == spans.len();
    let mut round_trips = true;
    for m in &polys {
        let c = translate_2cell(m)?;
        round_trips &= untranslate_2cell(&c)? == *m;
        match spans.iter().position(|s| *s == c) {
            Some(i) if !hit[i] => hit[i] = true,
            _ => bijective = false,
        }
    }
    for c in &spans {
        round_trips &= translate_2cell(&untranslate_2cell(c)?)? == *c;
    }
    Ok(CellCorrespondence {
        poly_side: polys.len(),
        span_side: spans.len(),
        bijective: bijective && hit.iter().all(|&h| h),
        round_trips,
    })
}
