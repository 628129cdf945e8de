//! Evaluation of polynomials over the trivial group in a commutative
//! semiring: `val(y) = Σ_{t(b)=y} Π_{n(a)=b} q(r(a))`.

use std::fmt::Debug;

use super::polynomial::Polynomial;
use super::rewrite::compose_poly;
use crate::calib::MorphismClass;
use crate::error::{boundary, Error, Result};
use crate::report::CheckOutcome;

pub trait Semiring {
    type Elem: Clone + Debug + PartialEq;

    fn name(&self) -> &'static str;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// `(ℕ, +, ·)`, saturating at `u64::MAX`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Naturals;

impl Semiring for Naturals {
    type Elem = u64;

    fn name(&self) -> &'static str {
        "naturals"
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        a.saturating_add(*b)
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a.saturating_mul(*b)
    }
}

/// `({false, true}, ∨, ∧)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Booleans;

impl Semiring for Booleans {
    type Elem = bool;

    fn name(&self) -> &'static str {
        "booleans"
    }

    fn zero(&self) -> bool {
        false
    }

    fn one(&self) -> bool {
        true
    }

    fn add(&self, a: &bool, b: &bool) -> bool {
        *a || *b
    }

    fn mul(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }
}

pub fn eval_semiring<R: Semiring>(p: &Polynomial, q: &[R::Elem], ring: &R) -> Result<Vec<R::Elem>> {
    if !p.src().group().is_trivial() {
        return Err(Error::Unsupported("semiring evaluation needs the trivial group".into()));
    }
    if q.len() != p.src().size() {
        return Err(boundary("input family has the wrong length"));
    }
    let mut at_b = vec![ring.one(); p.middle().size()];
    for a in p.exponent().points() {
        let b = p.n().apply(a);
        at_b[b] = ring.mul(&at_b[b], &q[p.r().apply(a)]);
    }
    let mut out = vec![ring.zero(); p.tgt().size()];
    for (b, v) in at_b.iter().enumerate() {
        let y = p.t().apply(b);
        out[y] = ring.add(&out[y], v);
    }
    Ok(out)
}

/// The composite evaluates like the two polynomials in turn, on every input.
pub fn check_poly_oracle<R: Semiring>(
    l: &MorphismClass,
    r: &MorphismClass,
    p: &Polynomial,
    q: &Polynomial,
    inputs: &[Vec<R::Elem>],
    ring: &R,
    out: &mut CheckOutcome,
) {
    let composite = compose_poly(l, r, p, q);
    for input in inputs {
        let res = composite.as_ref().map_err(Clone::clone).and_then(|c| {
            let direct = eval_semiring(&c.poly, input, ring)?;
            let stepwise = eval_semiring(q, &eval_semiring(p, input, ring)?, ring)?;
            Ok((direct, stepwise))
        });
        out.record_result(res, |(a, b)| a == b, || {
            format!(
                "{} on input {input:?}: p = {}, q = {}",
                ring.name(),
                super::describe(p),
                super::describe(q)
            )
        });
    }
}
