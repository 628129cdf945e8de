//! Seeded law-check suites.

use std::sync::Arc;

use crate::calib::{check_compatible_pair, check_protocalibration, MorphismClass};
use crate::completion::{
    check_cb, check_product_cb, check_sum_cb, Completion, CompletionObject, Representable, Slice, Terminal,
};
use crate::error::{Error, Result};
use crate::finact::{
    canonical_form, codiagonal, coproduct, equivariant_maps, is_pullback_square, lextensive_factor, product,
    sum_map, terminal, GMap, GSet, LextTriangle, SliceObject,
};
use crate::group::FiniteGroup;
use crate::mackey::{
    burnside_table, burnside_table_double_cosets, check_additivity, check_double_coset, check_functoriality,
    check_res_tr_functorial, eval_span, BurnsideMackey, FixedPointMackey,
};
use crate::poly::{
    check_cell_correspondence, check_distributive_law, distribute, eval_semiring,
    poly_to_spanspan, spanspan_to_poly, Booleans, Naturals,
};
use crate::report::{CheckOutcome, Report};
use crate::sample::Sampler;
use crate::span::{associator, check_adjunction, compose_spans, left_unitor, right_unitor, span_iso, Span};
use crate::tambara::{
    check_exchange, check_fp_preservation, check_norm_of_sum, check_tambara_functoriality, eval_poly,
    BurnsideTambara, SemiringTambara,
};

pub const SUITES: &[&str] = &[
    "protocalib",
    "compat",
    "span-laws",
    "cb",
    "distlaw",
    "mackey",
    "tambara",
    "lextensive",
    "plycorrespondence",
];

/// Map limit for exhaustive searches inside the suites.
const SEARCH_LIMIT: usize = 100_000;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub group: Arc<FiniteGroup>,
    pub seed: u64,
    /// Bound on the size of sampled G-sets; 0 samples nothing.
    pub max_size: usize,
    pub samples: usize,
}

impl SuiteConfig {
    pub fn new(group: Arc<FiniteGroup>, seed: u64) -> Self {
        SuiteConfig {
            group,
            seed,
            max_size: 4,
            samples: 20,
        }
    }

    fn sampler(&self, suite: &str) -> Sampler {
        let salt = SUITES.iter().position(|s| *s == suite).unwrap_or(SUITES.len()) as u64;
        Sampler::new(self.group.clone(), self.seed.wrapping_mul(1_000_003).wrapping_add(salt))
    }

    /// Size bound for suites whose constructions grow exponentially.
    fn small(&self, cap: usize) -> usize {
        self.max_size.min(cap)
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report> {
    let mut report = Report::new(name, cfg.group.name(), cfg.seed);
    if name == "all" {
        for s in SUITES {
            for mut c in run_suite(s, cfg)?.checks {
                c.name = format!("{s}: {}", c.name);
                report.push(c);
            }
        }
        return Ok(report);
    }
    if !SUITES.contains(&name) {
        return Err(Error::Input(format!(
            "unknown suite `{name}`; expected one of {}, all",
            SUITES.join(", ")
        )));
    }
    if cfg.max_size == 0 {
        return Ok(report);
    }
    let checks = match name {
        "protocalib" => protocalib(cfg),
        "compat" => compat(cfg),
        "span-laws" => span_laws(cfg),
        "cb" => cb(cfg),
        "distlaw" => distlaw(cfg),
        "mackey" => mackey(cfg)?,
        "tambara" => tambara(cfg),
        "lextensive" => lextensive(cfg),
        _ => plycorrespondence(cfg),
    };
    report.extend(checks);
    Ok(report)
}

/// Passes when `outcomes` contain a failure, carrying its witness as a note.
fn expect_rejection(name: String, outcomes: &[CheckOutcome]) -> CheckOutcome {
    let witness = outcomes
        .iter()
        .find(|o| !o.passed())
        .map(|o| format!("{}: {}", o.name, o.witness.clone().unwrap_or_default()));
    let mut c = CheckOutcome::new(name);
    c.record(witness.is_some(), || "no counterexample among the samples".into());
    match witness {
        Some(w) => c.with_note(w),
        None => c,
    }
}

fn protocalib(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    let mut s = cfg.sampler("protocalib");
    let fam = s.family(cfg.samples, cfg.max_size);
    let mut out = Vec::new();
    for name in MorphismClass::builtin_names() {
        let class = MorphismClass::by_name(name).expect("builtin class");
        out.extend(check_protocalibration(&class, &fam));
    }
    let broken = MorphismClass::constant_image();
    out.push(expect_rejection(
        "constant-image is rejected".into(),
        &check_protocalibration(&broken, &fam),
    ));
    out
}

fn compat(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    let mut s = cfg.sampler("compat");
    let fam = s.family(cfg.samples, cfg.max_size);
    let (all, inj, iso) = (MorphismClass::all(), MorphismClass::injective(), MorphismClass::isomorphisms());
    let mut out = Vec::new();
    for (l, r) in [(&all, &all), (&inj, &all), (&iso, &all), (&inj, &inj)] {
        out.extend(check_compatible_pair(l, r, &fam));
    }
    out.push(expect_rejection(
        "(all, injective) is rejected".into(),
        &check_compatible_pair(&all, &inj, &fam),
    ));
    out
}

fn span_laws(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    let mut s = cfg.sampler("span-laws");
    let m = cfg.max_size;
    let mut assoc = CheckOutcome::new("associator is invertible");
    let mut search = CheckOutcome::new("associativity by iso search");
    let mut units = CheckOutcome::new("unitors are invertible");
    let mut adj = CheckOutcome::new("adjunction triangle identities");
    for _ in 0..cfg.samples {
        let (x, y, z, w) = (s.gset(m), s.gset(m), s.gset(m), s.gset(m));
        let p = s.span(&x, &y, m);
        let q = s.span(&y, &z, m);
        let r = s.span(&z, &w, m);
        let shown = || format!("apexes {}, {}, {}", p.apex().size(), q.apex().size(), r.apex().size());
        assoc.record_result(associator(&p, &q, &r), |a| a.is_iso(), shown);
        let r2 = (|| -> Result<bool> {
            let lhs = compose_spans(&compose_spans(&p, &q)?, &r)?;
            let rhs = compose_spans(&p, &compose_spans(&q, &r)?)?;
            Ok(span_iso(&lhs, &rhs).is_some())
        })();
        search.record_result(r2, |ok| *ok, shown);
        let r3 = (|| -> Result<bool> { Ok(left_unitor(&p)?.is_iso() && right_unitor(&p)?.is_iso()) })();
        units.record_result(r3, |ok| *ok, || format!("apex {}", p.apex().size()));
        let f = s.map_into(&x, m);
        adj.record_result(
            check_adjunction(&MorphismClass::all(), &f),
            |ts| ts.iter().all(|t| t.passed),
            || format!("r = {:?}", f.table()),
        );
    }
    vec![assoc, search, units, adj]
}

pub fn slice_family(s: &mut Sampler, u: &GSet, m: usize) -> CompletionObject<SliceObject> {
    let map = s.map_into(u, m);
    let x = s.slice_over(map.dom(), m);
    CompletionObject { u: map, x }
}

pub fn terminal_family(s: &mut Sampler, u: &GSet, m: usize) -> CompletionObject<GSet> {
    let map = s.map_into(u, m);
    CompletionObject {
        x: map.dom().clone(),
        u: map,
    }
}

pub fn representable_family(s: &mut Sampler, u: &GSet, k: &GSet, m: usize) -> CompletionObject<GMap> {
    let p = product(u, k).expect("same group");
    let map = s.map_into(&p.prod, m);
    CompletionObject {
        u: p.pr1.compose(&map).expect("composable"),
        x: p.pr2.compose(&map).expect("composable"),
    }
}

/// `G/1 + pt`, the representing object used by the suites.
pub fn default_representing_object(group: &Arc<FiniteGroup>) -> GSet {
    let free = GSet::cosets(group.clone(), &group.trivial_subgroup());
    coproduct(&free, &terminal(group)).expect("same group").sum
}

fn cb(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    let mut s = cfg.sampler("cb");
    let m = cfg.max_size;
    let k = default_representing_object(&cfg.group);
    let all = MorphismClass::all();
    let ct = Completion::new(Terminal, all.clone());
    let cs = Completion::new(Slice::all(), all.clone());
    let cr = Completion::new(Representable::new(k.clone()), all);
    let mut t = CheckOutcome::new("mate invertible: terminal");
    let mut sl = CheckOutcome::new("mate invertible: slice");
    let mut rep = CheckOutcome::new("mate invertible: representable");
    let mut sums = CheckOutcome::new("sums along pullback squares");
    let mut prods = CheckOutcome::new("products along pullback squares");
    for _ in 0..cfg.samples {
        let u = s.gset(m);
        let f = s.map_into(&u, m);
        let g = s.map_into(&u, m);
        let o = terminal_family(&mut s, f.dom(), m);
        check_cb(&ct, &f, &g, &[o], &mut t);
        let o = slice_family(&mut s, f.dom(), m);
        check_cb(&cs, &f, &g, &[o], &mut sl);
        let o = representable_family(&mut s, f.dom(), &k, m);
        check_cb(&cr, &f, &g, &[o], &mut rep);
        let shown = || format!("f={:?} g={:?}", f.table(), g.table());
        let a = s.slice_over(f.dom(), m);
        sums.record_result(check_sum_cb(&Slice::all(), &f, &g, &a), |ok| *ok, shown);
        let a = s.slice_over(f.dom(), cfg.small(3));
        prods.record_result(check_product_cb(&Slice::all(), &f, &g, &a), |ok| *ok, shown);
    }
    vec![t, sl, rep, sums, prods]
}

fn distlaw(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    let mut s = cfg.sampler("distlaw");
    let all = MorphismClass::all();
    let m = cfg.small(3);
    let mut anchor = CheckOutcome::new("C2: sections of F+F over F are pt+pt+F");
    anchor.record_result(distlaw_anchor(), |ok| *ok, || "over C2".into());
    let mut iso = CheckOutcome::new("comparison is an isomorphism");
    let mut natural = CheckOutcome::new("comparison is natural");
    for _ in 0..cfg.samples {
        let base = s.gset(m);
        let u = s.map_into(&base, m);
        let a = s.map_into(u.dom(), m);
        let probes = vec![s.slice_over(a.dom(), m), s.slice_over(a.dom(), m)];
        check_distributive_law(&all, &all, &u, &a, &probes, 1000, &mut iso, &mut natural);
    }
    vec![anchor, iso, natural]
}

/// `Π` along `F → pt` of the fold `F+F → F` over `C2`.
pub fn distlaw_anchor() -> Result<bool> {
    let all = MorphismClass::all();
    let group = Arc::new(FiniteGroup::cyclic(2)?);
    let free = GSet::cosets(group.clone(), &group.trivial_subgroup());
    let pt = terminal(&group);
    let (_, nabla) = codiagonal(&free)?;
    let d = distribute(&all, &all, &GMap::to_terminal(&free), &nabla)?;
    let expected = coproduct(&coproduct(&pt, &pt)?.sum, &free)?.sum;
    let probe = SliceObject::identity(nabla.dom());
    Ok(d.pia().dom().size() == 4
        && canonical_form(d.pia().dom()) == canonical_form(&expected)
        && d.comparison(&probe)?.map.is_iso())
}

fn mackey(cfg: &SuiteConfig) -> Result<Vec<CheckOutcome>> {
    let mut s = cfg.sampler("mackey");
    let m = cfg.max_size;
    let group = &cfg.group;
    let all = MorphismClass::all();
    let mut anchor = CheckOutcome::new("fixed-point transfer of the free orbit");
    let free = GSet::cosets(group.clone(), &group.trivial_subgroup());
    let bang = GMap::to_terminal(&free);
    let fp = FixedPointMackey::naturals(group.clone());
    let r = (|| -> Result<bool> {
        let p = Span::new(bang.clone(), bang.clone())?;
        let n = group.order() as u64;
        let once = eval_span(&fp, &all, &p)?.apply(&[5])?;
        let twice = eval_span(&fp, &all, &compose_spans(&p, &p)?)?.apply(&[5])?;
        Ok(once == vec![5 * n] && twice == vec![5 * n * n])
    })();
    anchor.record_result(r, |ok| *ok, || format!("over {}", group.name()));
    let b = BurnsideMackey::new(group.clone());
    let coords = s.nonempty_gset(m);
    let fpk = FixedPointMackey::new(coords);
    let mut outs: Vec<CheckOutcome> = [
        "burnside: functoriality",
        "fixed-point: functoriality",
        "burnside: double coset formula",
        "fixed-point: double coset formula",
        "burnside: res and tr are functorial",
        "fixed-point: res and tr are functorial",
        "additivity",
    ]
    .iter()
    .map(|n| CheckOutcome::new(*n))
    .collect();
    for _ in 0..cfg.samples {
        let (x, y, z) = (s.gset(m), s.gset(m), s.gset(m));
        let p = s.span(&x, &y, m);
        let q = s.span(&y, &z, m);
        check_functoriality(&b, &all, &p, &q, &mut outs[0]);
        check_functoriality(&fpk, &all, &p, &q, &mut outs[1]);
        let u = s.gset(m);
        let f = s.map_into(&u, m);
        let g = s.map_into(&u, m);
        check_double_coset(&b, &f, &g, &mut outs[2]);
        check_double_coset(&fpk, &f, &g, &mut outs[3]);
        let k = s.map_into(f.dom(), m);
        check_res_tr_functorial(&b, &k, &f, &mut outs[4]);
        check_res_tr_functorial(&fpk, &k, &f, &mut outs[5]);
        check_additivity(&b, &x, &y, &mut outs[6]);
        check_additivity(&fpk, &x, &y, &mut outs[6]);
    }
    let mut table = CheckOutcome::new("Burnside table: pullbacks agree with double cosets");
    let by_pullbacks = burnside_table(group)?;
    table.record(by_pullbacks == burnside_table_double_cosets(group), || {
        by_pullbacks.to_text()
    });
    let mut checks = vec![anchor, table];
    checks.extend(outs);
    Ok(checks)
}

fn tambara(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    let mut s = cfg.sampler("tambara");
    let all = MorphismClass::all();
    let m = cfg.small(2);
    let t = BurnsideTambara::new(cfg.group.clone());
    let mut func = CheckOutcome::new("burnside: functoriality on composites");
    let mut dist = CheckOutcome::new("burnside: norm of a transfer");
    let mut ex = CheckOutcome::new("burnside: exchange with restriction");
    let mut fp = CheckOutcome::new("burnside: finite products");
    for _ in 0..cfg.samples {
        let (x, y, z) = (s.gset(m), s.gset(m), s.gset(m));
        let p = s.polynomial(&x, &y, m);
        let q = s.polynomial(&y, &z, m);
        let probes = vec![t.canonical(&s.slice_over(&x, m))];
        check_tambara_functoriality(&t, &all, &all, &p, &q, &probes, &mut func);
        let base = s.gset(m);
        let u = s.map_into(&base, m);
        let a = s.map_into(u.dom(), m);
        let probes = vec![t.canonical(&s.slice_over(a.dom(), m))];
        check_norm_of_sum(&t, &all, &all, &u, &a, &probes, &mut dist);
        let w = s.gset(m);
        let f = s.map_into(&w, m);
        let g = s.map_into(&w, m);
        let probes = vec![t.canonical(&s.slice_over(f.dom(), m))];
        check_exchange(&t, &f, &g, &probes, &mut ex);
        let pairs = vec![(t.canonical(&s.slice_over(&x, m)), t.canonical(&s.slice_over(&y, m)))];
        let over = match coproduct(&x, &y) {
            Ok(cp) => vec![t.canonical(&s.slice_over(&cp.sum, m))],
            Err(_) => Vec::new(),
        };
        check_fp_preservation(&t, &x, &y, &pairs, &over, &mut fp);
    }
    let trivial = Arc::new(FiniteGroup::trivial());
    let mut ts = Sampler::new(trivial, cfg.seed ^ 0x7a6b);
    let nat = SemiringTambara::new(Naturals);
    let boo = SemiringTambara::new(Booleans);
    let mut oracle = CheckOutcome::new("semiring instance matches direct evaluation");
    let mut sfunc = CheckOutcome::new("semiring: functoriality on composites");
    let sm = cfg.max_size;
    for _ in 0..cfg.samples {
        let (x, y, z) = (ts.gset(sm), ts.gset(sm), ts.gset(sm));
        let p = ts.polynomial(&x, &y, sm);
        let q = ts.polynomial(&y, &z, sm);
        let v: Vec<u64> = (0..x.size() as u64).map(|i| i + 1).collect();
        let bv: Vec<bool> = (0..x.size()).map(|i| i % 2 == 0).collect();
        let r = (|| -> Result<bool> {
            Ok(eval_poly(&nat, &all, &all, &p, &v)? == eval_semiring(&p, &v, &Naturals)?
                && eval_poly(&boo, &all, &all, &p, &bv)? == eval_semiring(&p, &bv, &Booleans)?)
        })();
        oracle.record_result(r, |ok| *ok, || crate::poly::describe(&p));
        check_tambara_functoriality(&nat, &all, &all, &p, &q, &[v], &mut sfunc);
        check_tambara_functoriality(&boo, &all, &all, &p, &q, &[bv], &mut sfunc);
    }
    vec![func, dist, ex, fp, oracle, sfunc]
}

fn lextensive(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    let mut s = cfg.sampler("lextensive");
    let m = cfg.max_size;
    let mut factor = CheckOutcome::new("factorization over a coproduct");
    let mut unique = CheckOutcome::new("factorization is unique (exhaustive)");
    let mut squares = CheckOutcome::new("coproduct of pullbacks");
    for _ in 0..cfg.samples {
        let (u, v) = (s.gset(m), s.gset(m));
        let h2 = s.map_into(&u, m);
        let k2 = s.map_into(&v, m);
        let r = s.map_into(h2.dom(), m);
        let sm = s.map_into(k2.dom(), m);
        let res = (|| -> Result<(bool, bool)> {
            let h = h2.compose(&r)?;
            let k = k2.compose(&sm)?;
            let base = coproduct(&u, &v)?;
            let src = coproduct(r.dom(), sm.dom())?;
            let tgt = coproduct(r.cod(), sm.cod())?;
            let f = sum_map(&r, &sm, &src, &tgt)?;
            let tri = LextTriangle {
                base: &base,
                src: &src,
                tgt: &tgt,
                h: &h,
                k: &k,
                h2: &h2,
                k2: &k2,
                f: &f,
            };
            let (r1, s1) = lextensive_factor(&tri)?;
            let found = r1 == r && s1 == sm;
            // every map over U+V splits, so maps over U+V = maps over U × maps over V
            let over_src = sum_map(&h, &k, &src, &base)?;
            let over_tgt = sum_map(&h2, &k2, &tgt, &base)?;
            let whole = equivariant_maps(&src.sum, &tgt.sum, &|a, b| over_src.apply(a) == over_tgt.apply(b), SEARCH_LIMIT)?;
            let left = equivariant_maps(r.dom(), r.cod(), &|a, b| h.apply(a) == h2.apply(b), SEARCH_LIMIT)?;
            let right = equivariant_maps(sm.dom(), sm.cod(), &|a, b| k.apply(a) == k2.apply(b), SEARCH_LIMIT)?;
            let mut splits = whole.len() == left.len() * right.len();
            for g in &whole {
                let t = LextTriangle { f: g, ..tri.clone() };
                splits &= lextensive_factor(&t).is_ok();
            }
            let matches = whole.iter().filter(|g| **g == f).count() == 1;
            Ok((found, splits && matches))
        })();
        let shown = || format!("r={:?} s={:?}", r.table(), sm.table());
        factor.record_result(res.as_ref(), |(a, _)| *a, shown);
        unique.record_result(res.as_ref(), |(_, b)| *b, shown);
        let f = s.map_into(&coproduct(&u, &v).expect("same group").sum, m);
        let r4 = (|| -> Result<bool> {
            let base = coproduct(&u, &v)?;
            let d = crate::finact::coproduct_pullback_decompose(&f, &base)?;
            let back = coproduct(&d.s, &d.t)?.copair(&d.ibar, &d.jbar)?;
            Ok(is_pullback_square(&d.ibar, &d.h, &f, &base.inj1)
                && is_pullback_square(&d.jbar, &d.k, &f, &base.inj2)
                && back.is_iso())
        })();
        squares.record_result(r4, |ok| *ok, || format!("|U|={} |V|={}", u.size(), v.size()));
    }
    vec![factor, unique, squares]
}

fn plycorrespondence(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    let mut s = cfg.sampler("plycorrespondence");
    let m = cfg.max_size;
    let mut trips = CheckOutcome::new("polynomial to span of spans and back");
    let mut cells = CheckOutcome::new("2-cells correspond bijectively");
    for _ in 0..cfg.samples {
        let (x, y) = (s.gset(m), s.gset(m));
        let p = s.polynomial(&x, &y, m);
        let ss = poly_to_spanspan(&p);
        trips.record_result(
            spanspan_to_poly(&ss),
            |back| *back == p && poly_to_spanspan(back) == ss,
            || crate::poly::describe(&p),
        );
        let k = cfg.small(2);
        let (x, y) = (s.gset(k), s.gset(k));
        let p = s.polynomial(&x, &y, cfg.small(3));
        let q = s.polynomial(&x, &y, cfg.small(3));
        cells.record_result(
            check_cell_correspondence(&p, &q, SEARCH_LIMIT),
            |c| c.bijective && c.round_trips,
            || format!("{} vs {}", crate::poly::describe(&p), crate::poly::describe(&q)),
        );
    }
    vec![trips, cells]
}
