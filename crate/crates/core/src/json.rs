//! JSON documents for groups, G-sets, maps, spans, polynomials, classes and
//! functor instances, and the [`Workspace`] that resolves them by name.
//!
//! Wherever a document expects an object it also accepts the name of one
//! declared elsewhere in the workspace. Groups additionally resolve the
//! built-in names of [`FiniteGroup::by_name`].

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::calib::MorphismClass;
use crate::error::{Error, Result};
use crate::finact::{coproduct, GMap, GSet};
use crate::group::FiniteGroup;
use crate::mackey::{BurnsideMackey, FixedPointMackey};
use crate::poly::{Booleans, Naturals, Polynomial};
use crate::span::Span;
use crate::tambara::{BurnsideTambara, SemiringTambara};

/// A name declared in the workspace, or the object itself.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref<T> {
    Name(String),
    Inline(Box<T>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDoc {
    /// A full multiplication table.
    #[serde(rename_all = "snake_case")]
    Table {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        order: usize,
        mult: Vec<Vec<usize>>,
    },
    /// Permutations of `0..degree` generating the group.
    Generators {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
}

/// `g·x` for every point, as the permutation `perm`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionEntry {
    pub element: usize,
    pub perm: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GSetDoc {
    /// The action of a generating set of group elements; an empty list is
    /// the trivial action.
    #[serde(rename_all = "snake_case")]
    Action {
        group: Ref<GroupDoc>,
        size: usize,
        action: Vec<ActionEntry>,
    },
    /// `G/H` with `H` generated by the listed elements.
    Cosets { group: Ref<GroupDoc>, cosets: Vec<usize> },
    /// A coproduct, summands in order.
    Sum { sum: Vec<Ref<GSetDoc>> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GMapDoc {
    pub dom: Ref<GSetDoc>,
    pub cod: Ref<GSetDoc>,
    pub table: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpanDoc {
    pub left: Ref<GMapDoc>,
    pub right: Ref<GMapDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyDoc {
    pub r: Ref<GMapDoc>,
    pub n: Ref<GMapDoc>,
    pub t: Ref<GMapDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassDoc {
    Builtin { builtin: String },
    Whitelist { whitelist: Vec<Ref<GMapDoc>> },
}

/// `kind` is one of `burnside-mackey`, `fixed-point`, `burnside`,
/// `semiring:naturals`, `semiring:boolean`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Ref<GroupDoc>>,
    /// Coordinate G-set of the fixed-point functor; a point by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Ref<GSetDoc>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceDoc {
    #[serde(default)]
    pub groups: BTreeMap<String, GroupDoc>,
    #[serde(default)]
    pub gsets: BTreeMap<String, GSetDoc>,
    #[serde(default)]
    pub gmaps: BTreeMap<String, GMapDoc>,
    #[serde(default)]
    pub spans: BTreeMap<String, SpanDoc>,
    #[serde(default)]
    pub polynomials: BTreeMap<String, PolyDoc>,
    #[serde(default)]
    pub classes: BTreeMap<String, ClassDoc>,
    #[serde(default)]
    pub functors: BTreeMap<String, FunctorDoc>,
}

#[derive(Clone, Debug)]
pub enum FunctorInstance {
    BurnsideMackey(BurnsideMackey),
    FixedPoint(FixedPointMackey),
    BurnsideTambara(BurnsideTambara),
    Naturals(SemiringTambara<Naturals>),
    Booleans(SemiringTambara<Booleans>),
}

impl FunctorInstance {
    pub fn kinds() -> &'static [&'static str] {
        &["burnside-mackey", "fixed-point", "burnside", "semiring:naturals", "semiring:boolean"]
    }

    pub fn build(kind: &str, group: Arc<FiniteGroup>, coords: Option<GSet>) -> Result<Self> {
        if coords.is_some() && kind != "fixed-point" {
            return Err(Error::Input(format!("`coords` only applies to fixed-point functors, not `{kind}`")));
        }
        Ok(match kind {
            "burnside-mackey" => FunctorInstance::BurnsideMackey(BurnsideMackey::new(group)),
            "fixed-point" => FunctorInstance::FixedPoint(match coords {
                Some(c) if *c.group() == group => FixedPointMackey::new(c),
                Some(_) => return Err(Error::GroupMismatch),
                None => FixedPointMackey::naturals(group),
            }),
            "burnside" => FunctorInstance::BurnsideTambara(BurnsideTambara::new(group)),
            "semiring:naturals" => FunctorInstance::Naturals(SemiringTambara::new(Naturals)),
            "semiring:boolean" | "semiring:booleans" => FunctorInstance::Booleans(SemiringTambara::new(Booleans)),
            _ => {
                return Err(Error::Input(format!(
                    "unknown functor kind `{kind}`; expected one of {}",
                    Self::kinds().join(", ")
                )))
            }
        })
    }
}

/// Every declaration of a [`WorkspaceDoc`], resolved and validated.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub groups: BTreeMap<String, Arc<FiniteGroup>>,
    pub gsets: BTreeMap<String, GSet>,
    pub gmaps: BTreeMap<String, GMap>,
    pub spans: BTreeMap<String, Span>,
    pub polynomials: BTreeMap<String, Polynomial>,
    pub classes: BTreeMap<String, MorphismClass>,
    pub functors: BTreeMap<String, FunctorInstance>,
}

fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

fn context(what: &str, name: &str, e: Error) -> Error {
    match e {
        Error::Input(m) => Error::Input(format!("{what} `{name}`: {m}")),
        other => Error::Input(format!("{what} `{name}`: {other}")),
    }
}

struct Resolver<'a> {
    doc: &'a WorkspaceDoc,
    ws: Workspace,
    builtin_groups: BTreeMap<String, Arc<FiniteGroup>>,
    active: BTreeSet<String>,
}

impl<'a> Resolver<'a> {
    fn group_doc(&mut self, d: &GroupDoc, fallback: Option<&str>) -> Result<Arc<FiniteGroup>> {
        let g = match d {
            GroupDoc::Table { name, order, mult } => {
                if mult.len() != *order {
                    return Err(input(format!("order {order} but {} table rows", mult.len())));
                }
                FiniteGroup::from_table(name.clone().or(fallback.map(String::from)).unwrap_or_else(|| format!("G{order}")), mult.clone())?
            }
            GroupDoc::Generators { name, degree, generators } => FiniteGroup::from_generators(
                name.clone().or(fallback.map(String::from)).unwrap_or_else(|| format!("perm{degree}")),
                *degree,
                generators,
            )?,
        };
        Ok(Arc::new(g))
    }

    fn group(&mut self, r: &Ref<GroupDoc>) -> Result<Arc<FiniteGroup>> {
        match r {
            Ref::Inline(d) => self.group_doc(d, None),
            Ref::Name(n) => {
                if let Some(g) = self.ws.groups.get(n) {
                    return Ok(g.clone());
                }
                if let Some(d) = self.doc.groups.get(n) {
                    let g = self.group_doc(d, Some(n)).map_err(|e| context("group", n, e))?;
                    self.ws.groups.insert(n.clone(), g.clone());
                    return Ok(g);
                }
                if let Some(g) = self.builtin_groups.get(&n.to_ascii_lowercase()) {
                    return Ok(g.clone());
                }
                let g = Arc::new(
                    FiniteGroup::by_name(n).map_err(|_| input(format!("unknown group `{n}`")))?,
                );
                self.builtin_groups.insert(n.to_ascii_lowercase(), g.clone());
                Ok(g)
            }
        }
    }

    fn enter(&mut self, kind: &str, name: &str) -> Result<()> {
        if !self.active.insert(format!("{kind}:{name}")) {
            return Err(input(format!("{kind} `{name}` refers to itself")));
        }
        Ok(())
    }

    fn leave(&mut self, kind: &str, name: &str) {
        self.active.remove(&format!("{kind}:{name}"));
    }

    fn gset_doc(&mut self, d: &GSetDoc) -> Result<GSet> {
        match d {
            GSetDoc::Action { group, size, action } => {
                let g = self.group(group)?;
                if action.is_empty() {
                    let id: Vec<usize> = (0..*size).collect();
                    return GSet::new(g.clone(), *size, vec![id; g.order()]);
                }
                let gens: Vec<(usize, Vec<usize>)> = action.iter().map(|a| (a.element, a.perm.clone())).collect();
                GSet::from_generator_action(g, *size, &gens)
            }
            GSetDoc::Cosets { group, cosets } => {
                let g = self.group(group)?;
                if let Some(bad) = cosets.iter().find(|&&e| e >= g.order()) {
                    return Err(input(format!("element {bad} is not in a group of order {}", g.order())));
                }
                let h = g.closure(cosets.iter().copied());
                Ok(GSet::cosets(g, &h))
            }
            GSetDoc::Sum { sum } => {
                let mut parts = sum.iter();
                let first = parts.next().ok_or_else(|| input("empty sum; use an action of size 0"))?;
                let mut acc = self.gset(first)?;
                for p in parts {
                    let next = self.gset(p)?;
                    acc = coproduct(&acc, &next)?.sum;
                }
                Ok(acc)
            }
        }
    }

    fn gset(&mut self, r: &Ref<GSetDoc>) -> Result<GSet> {
        match r {
            Ref::Inline(d) => self.gset_doc(d),
            Ref::Name(n) => {
                if let Some(x) = self.ws.gsets.get(n) {
                    return Ok(x.clone());
                }
                let d = self.doc.gsets.get(n).ok_or_else(|| input(format!("unknown gset `{n}`")))?;
                self.enter("gset", n)?;
                let x = self.gset_doc(d).map_err(|e| context("gset", n, e));
                self.leave("gset", n);
                let x = x?;
                self.ws.gsets.insert(n.clone(), x.clone());
                Ok(x)
            }
        }
    }

    fn gmap_doc(&mut self, d: &GMapDoc) -> Result<GMap> {
        let dom = self.gset(&d.dom)?;
        let cod = self.gset(&d.cod)?;
        GMap::new(dom, cod, d.table.clone())
    }

    fn gmap(&mut self, r: &Ref<GMapDoc>) -> Result<GMap> {
        match r {
            Ref::Inline(d) => self.gmap_doc(d),
            Ref::Name(n) => {
                if let Some(f) = self.ws.gmaps.get(n) {
                    return Ok(f.clone());
                }
                let d = self.doc.gmaps.get(n).ok_or_else(|| input(format!("unknown gmap `{n}`")))?;
                let f = self.gmap_doc(d).map_err(|e| context("gmap", n, e))?;
                self.ws.gmaps.insert(n.clone(), f.clone());
                Ok(f)
            }
        }
    }

    fn span_doc(&mut self, d: &SpanDoc) -> Result<Span> {
        Span::new(self.gmap(&d.left)?, self.gmap(&d.right)?)
    }

    fn poly_doc(&mut self, d: &PolyDoc) -> Result<Polynomial> {
        Polynomial::new(self.gmap(&d.r)?, self.gmap(&d.n)?, self.gmap(&d.t)?)
    }

    fn class_doc(&mut self, name: &str, d: &ClassDoc) -> Result<MorphismClass> {
        match d {
            ClassDoc::Builtin { builtin } => MorphismClass::by_name(builtin),
            ClassDoc::Whitelist { whitelist } => {
                let maps = whitelist.iter().map(|m| self.gmap(m)).collect::<Result<Vec<_>>>()?;
                Ok(MorphismClass::whitelist(name, maps))
            }
        }
    }

    fn functor_doc(&mut self, d: &FunctorDoc) -> Result<FunctorInstance> {
        let group = match &d.group {
            Some(g) => self.group(g)?,
            None if d.kind.starts_with("semiring") => Arc::new(FiniteGroup::trivial()),
            None => return Err(input(format!("functor kind `{}` needs a group", d.kind))),
        };
        let coords = d.coords.as_ref().map(|c| self.gset(c)).transpose()?;
        FunctorInstance::build(&d.kind, group, coords)
    }
}

impl Workspace {
    pub fn from_doc(doc: &WorkspaceDoc) -> Result<Self> {
        let mut r = Resolver {
            doc,
            ws: Workspace::default(),
            builtin_groups: BTreeMap::new(),
            active: BTreeSet::new(),
        };
        for n in doc.groups.keys() {
            r.group(&Ref::Name(n.clone()))?;
        }
        for n in doc.gsets.keys() {
            r.gset(&Ref::Name(n.clone()))?;
        }
        for n in doc.gmaps.keys() {
            r.gmap(&Ref::Name(n.clone()))?;
        }
        for (n, d) in &doc.spans {
            let s = r.span_doc(d).map_err(|e| context("span", n, e))?;
            r.ws.spans.insert(n.clone(), s);
        }
        for (n, d) in &doc.polynomials {
            let p = r.poly_doc(d).map_err(|e| context("polynomial", n, e))?;
            r.ws.polynomials.insert(n.clone(), p);
        }
        for (n, d) in &doc.classes {
            let c = r.class_doc(n, d).map_err(|e| context("class", n, e))?;
            r.ws.classes.insert(n.clone(), c);
        }
        for (n, d) in &doc.functors {
            let f = r.functor_doc(d).map_err(|e| context("functor", n, e))?;
            r.ws.functors.insert(n.clone(), f);
        }
        Ok(r.ws)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: WorkspaceDoc = serde_json::from_str(text).map_err(|e| input(format!("malformed workspace: {e}")))?;
        Self::from_doc(&doc)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// A declared class, or a built-in one by name.
    pub fn class(&self, name: &str) -> Result<MorphismClass> {
        match self.classes.get(name) {
            Some(c) => Ok(c.clone()),
            None => MorphismClass::by_name(name),
        }
    }

    pub fn span(&self, name: &str) -> Result<&Span> {
        self.spans.get(name).ok_or_else(|| input(format!("unknown span `{name}`")))
    }

    pub fn polynomial(&self, name: &str) -> Result<&Polynomial> {
        self.polynomials.get(name).ok_or_else(|| input(format!("unknown polynomial `{name}`")))
    }

    pub fn gmap(&self, name: &str) -> Result<&GMap> {
        self.gmaps.get(name).ok_or_else(|| input(format!("unknown gmap `{name}`")))
    }

    /// Counts of each kind of declaration.
    pub fn inventory(&self) -> BTreeMap<&'static str, usize> {
        BTreeMap::from([
            ("groups", self.groups.len()),
            ("gsets", self.gsets.len()),
            ("gmaps", self.gmaps.len()),
            ("spans", self.spans.len()),
            ("polynomials", self.polynomials.len()),
            ("classes", self.classes.len()),
            ("functors", self.functors.len()),
        ])
    }
}

/// Parses a standalone map document, with names resolved in `ws`.
pub fn gmap_from_value(ws: &Workspace, value: serde_json::Value) -> Result<GMap> {
    let doc: Ref<GMapDoc> = serde_json::from_value(value).map_err(|e| input(format!("malformed gmap: {e}")))?;
    match doc {
        Ref::Name(n) => ws.gmap(&n).cloned(),
        Ref::Inline(d) => {
            let empty = WorkspaceDoc::default();
            let mut r = Resolver {
                doc: &empty,
                ws: ws.clone(),
                builtin_groups: BTreeMap::new(),
                active: BTreeSet::new(),
            };
            r.gmap_doc(&d)
        }
    }
}

pub fn group_to_doc(g: &FiniteGroup) -> Ref<GroupDoc> {
    if FiniteGroup::by_name(g.name()).is_ok_and(|b| b == *g) {
        Ref::Name(g.name().to_string())
    } else {
        Ref::Inline(Box::new(GroupDoc::Table {
            name: Some(g.name().to_string()),
            order: g.order(),
            mult: g.table(),
        }))
    }
}

/// The action of every non-identity element.
pub fn gset_to_doc(x: &GSet) -> GSetDoc {
    let g = x.group();
    let table = x.action_table();
    GSetDoc::Action {
        group: group_to_doc(g),
        size: x.size(),
        action: g
            .elements()
            .filter(|&e| e != g.identity())
            .map(|e| ActionEntry {
                element: e,
                perm: table[e].clone(),
            })
            .collect(),
    }
}

pub fn gmap_to_doc(f: &GMap) -> GMapDoc {
    GMapDoc {
        dom: Ref::Inline(Box::new(gset_to_doc(f.dom()))),
        cod: Ref::Inline(Box::new(gset_to_doc(f.cod()))),
        table: f.table().to_vec(),
    }
}

pub fn span_to_doc(p: &Span) -> SpanDoc {
    SpanDoc {
        left: Ref::Inline(Box::new(gmap_to_doc(p.left()))),
        right: Ref::Inline(Box::new(gmap_to_doc(p.right()))),
    }
}

pub fn poly_to_doc(p: &Polynomial) -> PolyDoc {
    PolyDoc {
        r: Ref::Inline(Box::new(gmap_to_doc(p.r()))),
        n: Ref::Inline(Box::new(gmap_to_doc(p.n()))),
        t: Ref::Inline(Box::new(gmap_to_doc(p.t()))),
    }
}
