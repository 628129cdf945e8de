//! Mackey functors with free commutative monoid values: restriction and
//! transfer as natural-number matrices, evaluation on spans, the Burnside
//! ring table and the external box product.
//!
//! A span `X ←u S →v Y` acts `value(X) → value(Y)` by `res(u)` then `tr(v)`.
//! The opposite variance is obtained by reversing the span.

mod burnside;
mod fixed_point;
mod matrix;

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

pub use burnside::{atom_slice, atoms, realize_vector, vectorize, BurnsideMackey};
pub use fixed_point::{FixedPointGenerator, FixedPointMackey};
pub use matrix::NatMatrix;

use crate::calib::MorphismClass;
use crate::error::{boundary, Result};
use crate::finact::{coproduct, pullback, terminal, GMap, GSet, Product, SliceObject};
use crate::group::{FiniteGroup, Subgroup};
use crate::report::CheckOutcome;
use crate::span::{compose_spans, span_iso, Span};

pub trait MackeyFunctor {
    fn name(&self) -> String;

    /// Generator labels of `value(x)`, in matrix order.
    fn generators(&self, x: &GSet) -> Vec<String>;

    /// `res(f): value(B) → value(A)` for `f: A → B`.
    fn res(&self, f: &GMap) -> Result<NatMatrix>;

    /// `tr(u): value(A) → value(B)` for `u: A → B`.
    fn tr(&self, u: &GMap) -> Result<NatMatrix>;

    fn dim(&self, x: &GSet) -> usize {
        self.generators(x).len()
    }
}

/// `tr(v) ∘ res(u)` for `X ←u S →v Y`, with `u ∈ ℛ`.
pub fn eval_span<M: MackeyFunctor + ?Sized>(m: &M, class: &MorphismClass, p: &Span) -> Result<NatMatrix> {
    class.require(p.left())?;
    m.tr(p.right())?.compose(&m.res(p.left())?)
}

fn render_span(p: &Span) -> String {
    format!("left={:?} right={:?}", p.left().table(), p.right().table())
}

/// `eval(p;q) = eval(q) ∘ eval(p)`.
pub fn check_functoriality<M: MackeyFunctor + ?Sized>(
    m: &M,
    class: &MorphismClass,
    p: &Span,
    q: &Span,
    out: &mut CheckOutcome,
) {
    let r = (|| -> Result<bool> {
        let whole = eval_span(m, class, &compose_spans(p, q)?)?;
        let parts = eval_span(m, class, q)?.compose(&eval_span(m, class, p)?)?;
        Ok(whole == parts)
    })();
    out.record_result(r, |ok| *ok, || format!("p: {}; q: {}", render_span(p), render_span(q)));
}

/// `tr(f_g) ∘ res(g_f) = res(g) ∘ tr(f)` for the pullback of `f: S → U` and `g: V → U`.
pub fn check_double_coset<M: MackeyFunctor + ?Sized>(m: &M, f: &GMap, g: &GMap, out: &mut CheckOutcome) {
    let r = (|| -> Result<bool> {
        let pb = pullback(f, g)?;
        let lhs = m.tr(&pb.right)?.compose(&m.res(&pb.left)?)?;
        let rhs = m.res(g)?.compose(&m.tr(f)?)?;
        Ok(lhs == rhs)
    })();
    out.record_result(r, |ok| *ok, || format!("f={:?} g={:?}", f.table(), g.table()));
}

/// `res` and `tr` respect identities and the composite of `f: A → B`, `g: B → C`.
pub fn check_res_tr_functorial<M: MackeyFunctor + ?Sized>(m: &M, f: &GMap, g: &GMap, out: &mut CheckOutcome) {
    let r = (|| -> Result<bool> {
        let gf = g.compose(f)?;
        let (a, b) = (f.dom(), f.cod());
        let ids = m.res(&GMap::identity(a))? == NatMatrix::identity(m.dim(a))
            && m.tr(&GMap::identity(b))? == NatMatrix::identity(m.dim(b));
        let res = m.res(&gf)? == m.res(f)?.compose(&m.res(g)?)?;
        let tr = m.tr(&gf)? == m.tr(g)?.compose(&m.tr(f)?)?;
        Ok(ids && res && tr)
    })();
    out.record_result(r, |ok| *ok, || format!("f={:?} g={:?}", f.table(), g.table()));
}

/// `value(X+Y) → value(X) × value(Y)` by restriction is a bijection on
/// generators, inverted by the sum of the transfers.
pub fn check_additivity<M: MackeyFunctor + ?Sized>(m: &M, x: &GSet, y: &GSet, out: &mut CheckOutcome) {
    let r = (|| -> Result<bool> {
        let cp = coproduct(x, y)?;
        let (r1, r2) = (m.res(&cp.inj1)?, m.res(&cp.inj2)?);
        let n = m.dim(&cp.sum);
        let mut columns = Vec::with_capacity(n);
        for j in 0..n {
            let mut c = r1.column(j);
            c.extend(r2.column(j));
            columns.push(c);
        }
        let stacked = NatMatrix::from_columns(r1.rows + r2.rows, &columns);
        let back = m.tr(&cp.inj1)?.compose(&r1)?.add(&m.tr(&cp.inj2)?.compose(&r2)?)?;
        Ok(stacked.is_permutation() && back == NatMatrix::identity(n))
    })();
    out.record_result(r, |ok| *ok, || format!("|X|={} |Y|={}", x.size(), y.size()));
}

/// Isomorphic spans give equal matrices.
pub fn check_span_iso_invariance<M: MackeyFunctor + ?Sized>(
    m: &M,
    class: &MorphismClass,
    p: &Span,
    q: &Span,
    out: &mut CheckOutcome,
) {
    if span_iso(p, q).is_none() {
        return;
    }
    let r = (|| -> Result<bool> { Ok(eval_span(m, class, p)? == eval_span(m, class, q)?) })();
    out.record_result(r, |ok| *ok, || format!("p: {}; q: {}", render_span(p), render_span(q)));
}

/// Multiplication table of the Burnside ring on the transitive G-sets `G/H`,
/// listed from `H = G` down to `H = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BurnsideTable {
    pub group: String,
    pub atoms: Vec<String>,
    #[serde(skip)]
    pub subgroups: Vec<Subgroup>,
    /// `products[i][j]` holds the coefficients of `atoms[i] · atoms[j]`.
    pub products: Vec<Vec<Vec<u64>>>,
}

impl BurnsideTable {
    pub fn render_element(&self, v: &[u64]) -> String {
        let terms: Vec<String> = v
            .iter()
            .zip(&self.atoms)
            .filter(|(&k, _)| k > 0)
            .map(|(&k, a)| if k == 1 { a.clone() } else { format!("{k}{a}") })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .products
            .iter()
            .map(|row| row.iter().map(|v| self.render_element(v)).collect())
            .collect();
        let head_w = self.atoms.iter().map(String::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.atoms.len())
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].len())
                    .chain([self.atoms[j].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = format!("Burnside ring of {}\n", self.group);
        out.push_str(&format!("{:head_w$} |", ""));
        for (a, w) in self.atoms.iter().zip(&widths) {
            out.push_str(&format!(" {a:w$} |"));
        }
        out.push('\n');
        for (a, row) in self.atoms.iter().zip(&cells) {
            out.push_str(&format!("{a:head_w$} |"));
            for (c, w) in row.iter().zip(&widths) {
                out.push_str(&format!(" {c:w$} |"));
            }
            out.push('\n');
        }
        out
    }
}

fn table_order(group: &FiniteGroup) -> Vec<Subgroup> {
    let mut reps = group.subgroup_classes();
    reps.reverse();
    reps
}

fn atom_name(group: &FiniteGroup, h: &Subgroup) -> String {
    if h.order() == group.order() {
        "[pt]".into()
    } else if h.order() == 1 {
        "[F]".into()
    } else {
        format!("[G/{h}]")
    }
}

fn class_index(group: &FiniteGroup, order: &[Subgroup], h: &Subgroup) -> usize {
    let c = group.canonical_conjugate(h);
    order.iter().position(|k| *k == c).expect("every subgroup has a class")
}

/// The table computed from pullbacks over the point and orbit decomposition.
pub fn burnside_table(group: &Arc<FiniteGroup>) -> Result<BurnsideTable> {
    let order = table_order(group);
    let pt = terminal(group);
    let basis = atoms(&pt);
    let slices: Vec<SliceObject> = order
        .iter()
        .map(|h| SliceObject::new(GMap::to_terminal(&GSet::cosets(group.clone(), h))))
        .collect();
    let mut products = Vec::with_capacity(order.len());
    for a in &slices {
        let mut row = Vec::with_capacity(order.len());
        for b in &slices {
            let pb = pullback(a.map(), b.map())?;
            let v = vectorize(&pt, &SliceObject::new(GMap::to_terminal(&pb.apex)))?;
            let mut w = vec![0; order.len()];
            for (t, k) in basis.iter().zip(v) {
                w[class_index(group, &order, &t.stabilizer)] += k;
            }
            row.push(w);
        }
        products.push(row);
    }
    Ok(BurnsideTable {
        group: group.name().to_string(),
        atoms: order.iter().map(|h| atom_name(group, h)).collect(),
        subgroups: order,
        products,
    })
}

/// The same table by counting double cosets `H g K` and the classes of
/// `H ∩ gKg⁻¹`, without building any G-set.
pub fn burnside_table_double_cosets(group: &Arc<FiniteGroup>) -> BurnsideTable {
    let order = table_order(group);
    let mut products = Vec::with_capacity(order.len());
    for h in &order {
        let mut row = Vec::with_capacity(order.len());
        for k in &order {
            let mut w = vec![0; order.len()];
            let mut seen = BTreeSet::new();
            for g in group.elements() {
                if seen.contains(&g) {
                    continue;
                }
                for &x in h.elements() {
                    for &y in k.elements() {
                        seen.insert(group.mul(group.mul(x, g), y));
                    }
                }
                let conj = group.conjugate(k, g);
                let meet: Vec<usize> = h.elements().iter().copied().filter(|&x| conj.contains(x)).collect();
                w[class_index(group, &order, &Subgroup::from_sorted(meet))] += 1;
            }
            row.push(w);
        }
        products.push(row);
    }
    BurnsideTable {
        group: group.name().to_string(),
        atoms: order.iter().map(|h| atom_name(group, h)).collect(),
        subgroups: order,
        products,
    }
}

/// `M(S →a X) ⊗ N(S →b Y)` for a slice `s` over `X × Y`: both elements are
/// restricted to `S` and paired as a matrix `m_i · n_j`.
pub fn box_product<M: MackeyFunctor + ?Sized, N: MackeyFunctor + ?Sized>(
    m: &M,
    n: &N,
    prod: &Product,
    s: &SliceObject,
    mv: &[u64],
    nv: &[u64],
) -> Result<NatMatrix> {
    if s.base() != &prod.prod {
        return Err(boundary("box product: slice is not over the product"));
    }
    let a = prod.pr1.compose(s.map())?;
    let b = prod.pr2.compose(s.map())?;
    let ma = m.res(&a)?.apply(mv)?;
    let nb = n.res(&b)?.apply(nv)?;
    let columns: Vec<Vec<u64>> = nb.iter().map(|&y| ma.iter().map(|&x| x * y).collect()).collect();
    Ok(NatMatrix::from_columns(ma.len(), &columns))
}

#[cfg(test)]
mod tests;
