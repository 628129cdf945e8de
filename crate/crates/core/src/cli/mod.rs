//! The `polyspan` command line: `compose`, `check`, `burnside`, `eval` and
//! `validate`.
//!
//! [`run`] never panics on bad input; every failure becomes an error object
//! with a kind and a message. Exit codes: 0 when everything passed, 1 when a
//! check failed, 2 on an error.

mod suites;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

pub use suites::{
    default_representing_object, distlaw_anchor, representable_family, run_suite, slice_family, terminal_family,
    SuiteConfig, SUITES,
};

use crate::error::{Error, Result};
use crate::finact::{canonical_form, slice_canonical_form, SliceObject};
use crate::group::FiniteGroup;
use crate::json::{gmap_from_value, gset_to_doc, poly_to_doc, span_to_doc, FunctorInstance, Workspace};
use crate::mackey::{burnside_table, eval_span, MackeyFunctor};
use crate::poly::{compose_poly, describe};
use crate::report::Report;
use crate::span::compose_spans_in;
use crate::tambara::{eval_poly, TambaraFunctor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Span,
    Poly,
}

#[derive(Debug, Parser)]
#[command(name = "polyspan", version, about = "Spans, polynomials, Mackey and Tambara functors over finite G-sets")]
pub struct Cli {
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest sampled G-set; 0 samples nothing.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_size: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compose two spans or two polynomials from a workspace.
    Compose {
        #[arg(value_enum)]
        kind: Kind,
        lhs: String,
        rhs: String,
        #[arg(long, short)]
        workspace: PathBuf,
        /// Class of the transfer legs (span left legs, polynomial `t`).
        #[arg(long, default_value = "all")]
        r_class: String,
        /// Class of the norm legs (polynomial `n`).
        #[arg(long, default_value = "all")]
        l_class: String,
        /// Also write the result document here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the rewrite transcript here.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Run a law-check suite on sampled data.
    Check {
        /// One of the suite names, or `all`.
        suite: String,
        #[arg(long, default_value = "c2")]
        group: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Resolve the group in this workspace.
        #[arg(long, short)]
        workspace: Option<PathBuf>,
    },
    /// Print the multiplication table of a Burnside ring.
    Burnside {
        group: String,
        #[arg(long, short)]
        workspace: Option<PathBuf>,
    },
    /// Evaluate a Mackey functor on a span or a Tambara functor on a polynomial.
    Eval {
        /// A workspace functor or one of the built-in kinds.
        functor: String,
        /// A span (Mackey) or polynomial (Tambara) of the workspace.
        morphism: String,
        /// JSON: a coordinate vector, or a gmap (name or document) for `burnside`.
        input: String,
        #[arg(long, short)]
        workspace: PathBuf,
        #[arg(long, default_value = "all")]
        r_class: String,
        #[arg(long, default_value = "all")]
        l_class: String,
    },
    /// Load a workspace and report what it declares.
    Validate {
        #[arg(long, short)]
        workspace: PathBuf,
    },
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct ErrorObject<'a> {
    kind: &'a str,
    message: String,
}

fn error_outcome(format: Format, kind: &str, message: String) -> Outcome {
    match format {
        Format::Json => Outcome {
            code: 2,
            stdout: format!("{}\n", json!({ "error": ErrorObject { kind, message } })),
            stderr: String::new(),
        },
        Format::Text => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error [{kind}]: {message}\n"),
        },
    }
}

fn requested_format(args: &[OsString]) -> Format {
    let args: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    for (i, a) in args.iter().enumerate() {
        if a == "--format=json" || (a == "--format" && args.get(i + 1).is_some_and(|n| n == "json")) {
            return Format::Json;
        }
    }
    Format::Text
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    Outcome {
                        code: if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 },
                        stdout: e.to_string(),
                        stderr: String::new(),
                    }
                }
                _ => {
                    let text = e.to_string();
                    let first = text.lines().next().unwrap_or("").trim_start_matches("error: ");
                    error_outcome(requested_format(&args), "usage", first.to_string())
                }
            };
        }
    };
    let format = cli.format;
    match execute(&cli) {
        Ok((passed, stdout)) => Outcome {
            code: if passed { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        },
        Err(e) => error_outcome(format, e.kind(), e.to_string()),
    }
}

fn emit(format: Format, value: &Value, text: String) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(value).expect("value serializes")),
        Format::Text => text,
    }
}

fn write_json(path: &Path, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("value serializes");
    std::fs::write(path, text + "\n").map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))
}

fn resolve_group(name: &str, workspace: Option<&Path>) -> Result<Arc<FiniteGroup>> {
    if let Some(path) = workspace {
        let ws = Workspace::load(path)?;
        if let Some(g) = ws.groups.get(name) {
            return Ok(g.clone());
        }
    }
    Ok(Arc::new(FiniteGroup::by_name(name)?))
}

/// Runs a suite; the report is byte-identical for identical arguments.
pub fn cmd_check(suite: &str, cfg: &SuiteConfig) -> Result<Report> {
    run_suite(suite, cfg)
}

fn execute(cli: &Cli) -> Result<(bool, String)> {
    let f = cli.format;
    match &cli.command {
        Command::Check {
            suite,
            group,
            samples,
            workspace,
        } => {
            let cfg = SuiteConfig {
                group: resolve_group(group, workspace.as_deref())?,
                seed: cli.seed,
                max_size: cli.max_size,
                samples: *samples,
            };
            let report = cmd_check(suite, &cfg)?;
            let out = match f {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            Ok((report.passed(), out))
        }
        Command::Burnside { group, workspace } => {
            let g = resolve_group(group, workspace.as_deref())?;
            let table = burnside_table(&g)?;
            let value = serde_json::to_value(&table).expect("table serializes");
            Ok((true, emit(f, &value, table.to_text())))
        }
        Command::Validate { workspace } => {
            let ws = Workspace::load(workspace)?;
            let inv = ws.inventory();
            let mut text = format!("{}: ok\n", workspace.display());
            for (k, n) in &inv {
                text.push_str(&format!("  {k:12} {n}\n"));
            }
            let value = json!({ "workspace": workspace.display().to_string(), "valid": true, "declarations": inv });
            Ok((true, emit(f, &value, text)))
        }
        Command::Compose {
            kind,
            lhs,
            rhs,
            workspace,
            r_class,
            l_class,
            out,
            transcript,
        } => {
            let ws = Workspace::load(workspace)?;
            let rc = ws.class(r_class)?;
            let (value, text, steps) = match kind {
                Kind::Span => {
                    let s = compose_spans_in(&rc, ws.span(lhs)?, ws.span(rhs)?)?;
                    let value = json!({
                        "kind": "span",
                        "lhs": lhs,
                        "rhs": rhs,
                        "result": span_to_doc(&s),
                        "apex": canonical_form(s.apex()),
                    });
                    let text = format!(
                        "{lhs} ; {rhs}: apex {} with {} points\n  left  {:?}\n  right {:?}\n",
                        canonical_form(s.apex()),
                        s.apex().size(),
                        s.left().table(),
                        s.right().table()
                    );
                    (value, text, None)
                }
                Kind::Poly => {
                    let lc = ws.class(l_class)?;
                    let c = compose_poly(&lc, &rc, ws.polynomial(lhs)?, ws.polynomial(rhs)?)?;
                    let steps = serde_json::to_value(&c.transcript).expect("transcript serializes");
                    let value = json!({
                        "kind": "poly",
                        "lhs": lhs,
                        "rhs": rhs,
                        "result": poly_to_doc(&c.poly),
                        "exponent": canonical_form(c.poly.exponent()),
                        "middle": canonical_form(c.poly.middle()),
                        "transcript": steps,
                    });
                    let mut text = format!("{lhs} ; {rhs}: {}\n", describe(&c.poly));
                    text.push_str(&format!(
                        "  A = {}\n  B = {}\n  {} rewrite steps\n",
                        canonical_form(c.poly.exponent()),
                        canonical_form(c.poly.middle()),
                        c.transcript.len()
                    ));
                    for (i, st) in c.transcript.iter().enumerate() {
                        text.push_str(&format!("  {:>2}. {} at {}: {}  =>  {}\n", i + 1, st.rule, st.position, st.before, st.after));
                    }
                    (value, text, Some(steps))
                }
            };
            if let Some(path) = out {
                write_json(path, &value["result"])?;
            }
            if let Some(path) = transcript {
                write_json(path, steps.as_ref().unwrap_or(&Value::Array(Vec::new())))?;
            }
            Ok((true, emit(f, &value, text)))
        }
        Command::Eval {
            functor,
            morphism,
            input,
            workspace,
            r_class,
            l_class,
        } => {
            let ws = Workspace::load(workspace)?;
            let (value, text) = eval(&ws, functor, morphism, input, r_class, l_class)?;
            Ok((true, emit(f, &value, text)))
        }
    }
}

fn parse_input(input: &str) -> Result<Value> {
    match serde_json::from_str::<Value>(input) {
        Ok(v) => Ok(v),
        // a bare name of a workspace gmap
        Err(_) => Ok(Value::String(input.to_string())),
    }
}

fn vector<T: serde::de::DeserializeOwned>(v: &Value, what: &str) -> Result<Vec<T>> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("input is not a {what} vector: {e}")))
}

fn eval(ws: &Workspace, functor: &str, morphism: &str, input: &str, r_class: &str, l_class: &str) -> Result<(Value, String)> {
    let rc = ws.class(r_class)?;
    let lc = ws.class(l_class)?;
    let raw = parse_input(input)?;
    let group_of_morphism = || -> Result<Arc<FiniteGroup>> {
        if let Some(s) = ws.spans.get(morphism) {
            return Ok(s.apex().group().clone());
        }
        Ok(ws.polynomial(morphism)?.src().group().clone())
    };
    let instance = match ws.functors.get(functor) {
        Some(i) => i.clone(),
        None => FunctorInstance::build(functor, group_of_morphism()?, None)?,
    };
    let mackey = |m: &dyn MackeyFunctor| -> Result<(Value, String)> {
        let p = ws.span(morphism)?;
        let v: Vec<u64> = vector(&raw, "natural-number")?;
        if v.len() != m.dim(p.src()) {
            return Err(Error::Input(format!(
                "input has {} coordinates but value(source) has {} generators",
                v.len(),
                m.dim(p.src())
            )));
        }
        let out = eval_span(m, &rc, p)?.apply(&v)?;
        let gens = m.generators(p.tgt());
        let value = json!({ "functor": m.name(), "morphism": morphism, "input": v, "output": out, "generators": gens });
        Ok((value, format!("{} on {morphism}: {v:?} -> {out:?}\n", m.name())))
    };
    match &instance {
        FunctorInstance::BurnsideMackey(m) => mackey(m),
        FunctorInstance::FixedPoint(m) => mackey(m),
        FunctorInstance::BurnsideTambara(t) => {
            let p = ws.polynomial(morphism)?;
            let slice = SliceObject::new(gmap_from_value(ws, raw)?);
            if slice.base() != p.src() {
                return Err(Error::Input("input slice is not over the source of the polynomial".into()));
            }
            let out = eval_poly(t, &lc, &rc, p, &t.canonical(&slice))?;
            let value = json!({
                "functor": t.name(),
                "morphism": morphism,
                "input": slice_canonical_form(&slice),
                "output": slice_canonical_form(&out),
                "output_total": gset_to_doc(out.total()),
                "output_map": out.map().table(),
            });
            let text = format!("{} on {morphism}: {} -> {}\n", t.name(), slice_canonical_form(&slice), slice_canonical_form(&out));
            Ok((value, text))
        }
        FunctorInstance::Naturals(t) => {
            let p = ws.polynomial(morphism)?;
            let v: Vec<u64> = vector(&raw, "natural-number")?;
            let out = eval_poly(t, &lc, &rc, p, &v)?;
            let value = json!({ "functor": t.name(), "morphism": morphism, "input": v, "output": out });
            Ok((value, format!("{} on {morphism}: {v:?} -> {out:?}\n", t.name())))
        }
        FunctorInstance::Booleans(t) => {
            let p = ws.polynomial(morphism)?;
            let v: Vec<bool> = vector(&raw, "boolean")?;
            let out = eval_poly(t, &lc, &rc, p, &v)?;
            let value = json!({ "functor": t.name(), "morphism": morphism, "input": v, "output": out });
            Ok((value, format!("{} on {morphism}: {v:?} -> {out:?}\n", t.name())))
        }
    }
}

