//! Law checks for cocompletions: the adjunction `pushforward ⊣ reindex`,
//! Chevalley–Beck squares, monad laws, the span extension and biproducts.

use serde::Serialize;

use super::cocompletion::{Completion, CompletionObject};
use super::indexed::{IndexedCategory, SumsAlong};
use crate::error::Result;
use crate::finact::{codiagonal, pullback, Coproduct, GMap, GSet};
use crate::report::CheckOutcome;
use crate::span::{span_iso, Span};

/// Both sides of `C(U)((r∘v, y), o') ≅ C(V)((v, y), X(r) o')`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomBijection {
    pub lhs: usize,
    pub rhs: usize,
    pub bijective: bool,
}

pub fn hom_bijection<X: IndexedCategory>(
    c: &Completion<X>,
    r: &GMap,
    o: &CompletionObject<X::Obj>,
    o2: &CompletionObject<X::Obj>,
) -> Result<HomBijection> {
    let pushed = c.pushforward(r, o)?;
    let lhs = c.hom(&pushed, o2)?;
    let rhs = c.hom(o, &c.reindex(r, o2)?)?;
    let mut hit = vec![false; rhs.len()];
    let mut bijective = lhs.len() == rhs.len();
    for m in &lhs {
        let t = c.transpose(r, o, m)?;
        match rhs.iter().position(|n| *n == t) {
            Some(i) if !hit[i] => hit[i] = true,
            _ => bijective = false,
        }
    }
    Ok(HomBijection {
        lhs: lhs.len(),
        rhs: rhs.len(),
        bijective: bijective && hit.iter().all(|&h| h),
    })
}

/// Transposition commutes with post-composition by `φ: o' → o''`.
pub fn check_naturality<X: IndexedCategory>(
    c: &Completion<X>,
    r: &GMap,
    o: &CompletionObject<X::Obj>,
    o2: &CompletionObject<X::Obj>,
    o3: &CompletionObject<X::Obj>,
) -> Result<(usize, usize)> {
    let pushed = c.pushforward(r, o)?;
    let (mut checked, mut failed) = (0, 0);
    for phi in c.hom(o2, o3)? {
        let phi_r = c.reindex_mor(r, o2, o3, &phi)?;
        for m in c.hom(&pushed, o2)? {
            let a = c.transpose(r, o, &c.compose(&m, &phi)?)?;
            let b = c.compose(&c.transpose(r, o, &m)?, &phi_r)?;
            checked += 1;
            if a != b {
                failed += 1;
            }
        }
    }
    Ok((checked, failed))
}

/// Invertibility of the mate for the pullback square of `f: S → U`, `g: V → U`.
pub fn check_cb<X: IndexedCategory>(
    c: &Completion<X>,
    f: &GMap,
    g: &GMap,
    samples: &[CompletionObject<X::Obj>],
    out: &mut CheckOutcome,
) {
    for o in samples {
        let r = c.mate(f, g, o).and_then(|m| {
            let w_ok = m.w.is_iso();
            let xi_ok = c.inner.inverse(&m.xi).is_some();
            let back = c.inverse(&m);
            Ok(w_ok && xi_ok && back.is_some())
        });
        out.record_result(r, |ok| *ok, || {
            format!(
                "square f={:?}, g={:?}, object {}",
                f.table(),
                g.table(),
                c.describe(o)
            )
        });
    }
}

/// `μ∘η_C ≅ 1`, `μ∘C(η) ≅ 1`, and associativity of `μ` on nested families.
pub fn check_monad_laws<X: IndexedCategory>(
    c: &Completion<X>,
    samples: &[(GMap, GMap, CompletionObject<X::Obj>)],
) -> Result<Vec<CheckOutcome>> {
    let mut left = CheckOutcome::new("mu after eta at the completion");
    let mut right = CheckOutcome::new("mu after completed eta");
    let mut assoc = CheckOutcome::new("mu associativity");
    for (u1, u2, o) in samples {
        let outer = CompletionObject {
            u: GMap::identity(u1.cod()),
            x: CompletionObject {
                u: u1.compose(u2)?.compose(&o.u)?,
                x: o.x.clone(),
            },
        };
        let flat = c.mu_flatten(&outer)?;
        left.record(c.find_iso(&flat, &outer.x)?.is_some(), || c.describe(&outer.x));
        let base = &outer.x;
        let flat = c.mu_flatten(&c.completed_eta(base))?;
        right.record(c.find_iso(&flat, base)?.is_some(), || c.describe(base));
        // (u1, (u2, (u3, x)))
        let a = c.mu_flatten(&CompletionObject {
            u: u1.compose(u2)?,
            x: o.clone(),
        })?;
        let b = c.mu_flatten(&CompletionObject {
            u: u1.clone(),
            x: CompletionObject {
                u: u2.compose(&o.u)?,
                x: o.x.clone(),
            },
        })?;
        assoc.record(a == b || c.find_iso(&a, &b)?.is_some(), || c.describe(o));
    }
    Ok(vec![left, right, assoc])
}

/// For `X` with sums: `C(U)((u, x), η y)` and `X(U)(Σ_u x, y)` have equal size.
pub fn check_unit_left_adjoint<X: SumsAlong>(
    c: &Completion<X>,
    o: &CompletionObject<X::Obj>,
    y: &X::Obj,
) -> Result<bool> {
    let lhs = c.hom(o, &c.unit_eta(y))?.len();
    let rhs = c.inner.hom(&c.inner.sum_along(&o.u, &o.x)?, y)?.len();
    Ok(lhs == rhs)
}

/// `X_sp(U ←u S →v V)(y) = Σ_u X(v) y` for `y ∈ X(V)`.
pub fn extend_to_spans<X: SumsAlong>(x: &X, p: &Span, y: &X::Obj) -> Result<X::Obj> {
    x.sum_along(p.left(), &x.reindex(p.right(), y)?)
}

/// `X_sp(p;q) ≅ X_sp(p)∘X_sp(q)` on the probes (over the target of `q`).
pub fn check_span_functor<X: SumsAlong>(
    x: &X,
    p: &Span,
    q: &Span,
    probes: &[X::Obj],
    out: &mut CheckOutcome,
) {
    for y in probes {
        let r = (|| -> Result<bool> {
            let pq = crate::span::compose_spans(p, q)?;
            let direct = extend_to_spans(x, &pq, y)?;
            let stepwise = extend_to_spans(x, p, &extend_to_spans(x, q, y)?)?;
            Ok(x.find_iso(&direct, &stepwise)?.is_some())
        })();
        out.record_result(r, |ok| *ok, || format!("probe {}", x.describe(y)));
    }
}

/// Isomorphic spans act isomorphically.
pub fn check_span_iso_invariance<X: SumsAlong>(
    x: &X,
    p: &Span,
    q: &Span,
    probes: &[X::Obj],
    out: &mut CheckOutcome,
) {
    if span_iso(p, q).is_none() {
        return;
    }
    for y in probes {
        let r = (|| -> Result<bool> {
            let a = extend_to_spans(x, p, y)?;
            let b = extend_to_spans(x, q, y)?;
            Ok(x.find_iso(&a, &b)?.is_some())
        })();
        out.record_result(r, |ok| *ok, || format!("probe {}", x.describe(y)));
    }
}

/// The comparison `X(U+V) → X(U) × X(V)` is essentially surjective and
/// fully faithful on the probes.
pub fn check_biproduct_preservation<X: IndexedCategory>(
    x: &X,
    base: &Coproduct,
    over_sum: &[X::Obj],
    pairs: &[(X::Obj, X::Obj)],
) -> Vec<CheckOutcome> {
    let (i, j) = (&base.inj1, &base.inj2);
    let mut surj = CheckOutcome::new(format!("{}: glued pairs restrict back", x.name()));
    for (a, b) in pairs {
        let r = (|| -> Result<bool> {
            let w = x.glue(base, a, b)?;
            Ok(x.find_iso(&x.reindex(i, &w)?, a)?.is_some()
                && x.find_iso(&x.reindex(j, &w)?, b)?.is_some())
        })();
        surj.record_result(r, |ok| *ok, || format!("pair ({}, {})", x.describe(a), x.describe(b)));
    }
    let mut glue = CheckOutcome::new(format!("{}: restrictions glue back", x.name()));
    let mut faithful = CheckOutcome::new(format!("{}: comparison fully faithful", x.name()));
    for (k, w) in over_sum.iter().enumerate() {
        let r = (|| -> Result<bool> {
            let g = x.glue(base, &x.reindex(i, w)?, &x.reindex(j, w)?)?;
            Ok(x.find_iso(&g, w)?.is_some())
        })();
        glue.record_result(r, |ok| *ok, || format!("object {}", x.describe(w)));
        if let Some(w2) = over_sum.get((k + 1) % over_sum.len().max(1)) {
            let r = (|| -> Result<bool> {
                let (w1a, w1b) = (x.reindex(i, w)?, x.reindex(j, w)?);
                let (w2a, w2b) = (x.reindex(i, w2)?, x.reindex(j, w2)?);
                let whole = x.hom(w, w2)?;
                let parts = x.hom(&w1a, &w2a)?.len() * x.hom(&w1b, &w2b)?.len();
                let mut images = Vec::with_capacity(whole.len());
                for m in &whole {
                    let pair = (x.reindex_mor(i, w, w2, m)?, x.reindex_mor(j, w, w2, m)?);
                    if images.contains(&pair) {
                        return Ok(false);
                    }
                    images.push(pair);
                }
                Ok(whole.len() == parts)
            })();
            faithful.record_result(r, |ok| *ok, || format!("objects {} and {}", x.describe(w), x.describe(w2)));
        }
    }
    vec![surj, glue, faithful]
}

/// Coproducts inside `X(U)` as `Σ_∇` of the glued pair, with their universal
/// property counted against the probe `z`.
pub fn check_local_sum<X: SumsAlong>(x: &X, u: &GSet, a: &X::Obj, b: &X::Obj, z: &X::Obj) -> Result<bool> {
    let (cp, nabla) = codiagonal(u)?;
    let sum = x.sum_along(&nabla, &x.glue(&cp, a, b)?)?;
    let lhs = x.hom(&sum, z)?.len();
    let rhs = x.hom(a, z)?.len() * x.hom(b, z)?.len();
    Ok(lhs == rhs)
}

/// `Σ` along a pullback square computed both ways agrees: the object-level
/// Chevalley–Beck condition `Σ_{f_g} X(g_f) ≅ X(g) Σ_f`.
pub fn check_sum_cb<X: SumsAlong>(x: &X, f: &GMap, g: &GMap, a: &X::Obj) -> Result<bool> {
    let sq = pullback(f, g)?;
    let lhs = x.sum_along(&sq.right, &x.reindex(&sq.left, a)?)?;
    let rhs = x.reindex(g, &x.sum_along(f, a)?)?;
    Ok(x.find_iso(&lhs, &rhs)?.is_some())
}
