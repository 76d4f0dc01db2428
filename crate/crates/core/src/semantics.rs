//! Brute-force Tarskian semantics over finite models.
//!
//! A model is either a rank-truncated universe `V_k` with real membership, or
//! an arbitrary finite digraph whose edges `a -> b` are read as `a in b`.
//!
//! A family binder `fam u[i] in X . B` is true when `B` holds for every total
//! mapping from the index domain into the carrier. When `X` is a set term the
//! index domain is the members of its denotation. When `X` is a literal the
//! domain is the literal's elements taken as labels, so no node of the model
//! has to denote the literal; in `V_k` and in any digraph where the literal
//! does denote a node the two readings coincide.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use thiserror::Error;

use crate::ast::{family_scope_body, free_vars, Formula, Index, Term, VarName};
use crate::axioms::{axiom_formula, AxiomName};
use crate::hf::{v_universe, HfError, HfSet};

/// Default cap on environment extensions per evaluation.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Largest digraph considered by [`find_countermodel`].
pub const MAX_COUNTERMODEL_NODES: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("set variable `{0}` has no value in the environment")]
    Unassigned(VarName),
    #[error("family `{0}` is not bound")]
    UnboundFamily(VarName),
    #[error("index variable `{0}` is not bound")]
    UnboundIndex(VarName),
    #[error("literal {0} does not denote an element of the model")]
    Undenotable(HfSet),
    #[error("label {label} is outside the index domain of family `{family}`")]
    LabelOutsideDomain { family: VarName, label: String },
    #[error("index variable `{index}` and family `{family}` range over different index sets")]
    IndexKindMismatch { index: VarName, family: VarName },
    #[error("index set must be a set variable or a literal")]
    BadIndexSet,
    #[error("enumeration budget of {0} environment extensions exceeded")]
    BudgetExceeded(u64),
}

// ---------------------------------------------------------------------------
// Models

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankUniverse {
    pub k: usize,
    pub carrier: Vec<HfSet>,
    members: Vec<Vec<usize>>,
}

impl RankUniverse {
    pub fn new(k: usize) -> Result<Self, HfError> {
        let carrier = v_universe(k)?;
        let members = carrier
            .iter()
            .map(|x| {
                x.elements()
                    .iter()
                    .map(|e| carrier.binary_search(e).expect("V_k is transitive"))
                    .collect()
            })
            .collect();
        Ok(RankUniverse { k, carrier, members })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    pub nodes: Vec<String>,
    /// `(a, b)` means node `a` is a member of node `b`.
    pub edges: Vec<(usize, usize)>,
    members: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(nodes: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        let mut members = vec![Vec::new(); nodes.len()];
        for &(a, b) in &edges {
            assert!(a < nodes.len() && b < nodes.len(), "edge ({a}, {b}) out of range");
            members[b].push(a);
        }
        for m in &mut members {
            m.sort_unstable();
        }
        Digraph { nodes, edges, members }
    }

    /// Nodes `n0..n{count-1}`; bit `a * count + b` of `mask` is the edge `a in b`.
    pub fn from_mask(count: usize, mask: u64) -> Self {
        let nodes = (0..count).map(|k| format!("n{k}")).collect();
        let edges = (0..count)
            .flat_map(|a| (0..count).map(move |b| (a, b)))
            .filter(|&(a, b)| mask & (1 << (a * count + b)) != 0);
        Digraph::new(nodes, edges)
    }

    /// All labeled digraphs on `count` nodes in mask order.
    pub fn all(count: usize) -> impl Iterator<Item = Digraph> {
        (0..(1u64 << (count * count))).map(move |m| Digraph::from_mask(count, m))
    }

    /// No membership cycle (self-loops included).
    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm on the edge relation.
        let n = self.nodes.len();
        let mut indeg = vec![0usize; n];
        for &(_, b) in &self.edges {
            indeg[b] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(a, b) in &self.edges {
                if a == v {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        stack.push(b);
                    }
                }
            }
        }
        seen == n
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    RankUniverse(RankUniverse),
    Digraph(Digraph),
}

impl Model {
    pub fn vrank(k: usize) -> Result<Self, HfError> {
        RankUniverse::new(k).map(Model::RankUniverse)
    }

    pub fn size(&self) -> usize {
        self.member_lists().len()
    }

    fn member_lists(&self) -> &[Vec<usize>] {
        match self {
            Model::RankUniverse(r) => &r.members,
            Model::Digraph(d) => &d.members,
        }
    }

    /// Members of element `e`, sorted.
    pub fn members(&self, e: usize) -> &[usize] {
        &self.member_lists()[e]
    }

    pub fn is_member(&self, a: usize, b: usize) -> bool {
        self.members(b).binary_search(&a).is_ok()
    }

    /// Human-readable name of an element.
    pub fn label(&self, e: usize) -> String {
        match self {
            Model::RankUniverse(r) => r.carrier[e].to_string(),
            Model::Digraph(d) => d.nodes[e].clone(),
        }
    }

    /// Element named `name` (an HF literal for rank universes, a node id for digraphs).
    pub fn element(&self, name: &str) -> Option<usize> {
        match self {
            Model::RankUniverse(r) => {
                let h = crate::parser::parse_hf(name).ok()?;
                r.carrier.binary_search(&h).ok()
            }
            Model::Digraph(d) => d.nodes.iter().position(|n| n == name),
        }
    }

    /// The element denoted by an HF literal. In a digraph every element of the
    /// literal must itself denote a unique node, and exactly one node must have
    /// precisely those nodes as members.
    pub fn denote(&self, h: &HfSet) -> Result<usize, EvalError> {
        match self {
            Model::RankUniverse(r) => r.carrier.binary_search(h).map_err(|_| EvalError::Undenotable(h.clone())),
            Model::Digraph(d) => {
                let mut image = h.elements().iter().map(|e| self.denote(e)).collect::<Result<Vec<_>, _>>()?;
                image.sort_unstable();
                image.dedup();
                let mut found = d.members.iter().enumerate().filter(|(_, m)| **m == image).map(|(n, _)| n);
                match (found.next(), found.next()) {
                    (Some(n), None) => Ok(n),
                    _ => Err(EvalError::Undenotable(h.clone())),
                }
            }
        }
    }

    /// Model-spec text: `vrank <k>`, or `digraph` followed by `node` and `edge` lines.
    pub fn to_spec(&self) -> String {
        match self {
            Model::RankUniverse(r) => format!("vrank {}\n", r.k),
            Model::Digraph(d) => {
                let mut s = String::from("digraph\n");
                for n in &d.nodes {
                    let _ = writeln!(s, "node {n}");
                }
                for &(a, b) in &d.edges {
                    let _ = writeln!(s, "edge {} {}", d.nodes[a], d.nodes[b]);
                }
                s
            }
        }
    }
}

impl From<Digraph> for Model {
    fn from(d: Digraph) -> Self {
        Model::Digraph(d)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelSpecError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Universe(#[from] HfError),
}

/// Parses a model spec. `vrank:<k>` is accepted as a one-line shorthand.
pub fn parse_model_spec(text: &str) -> Result<Model, ModelSpecError> {
    let err = |line: usize, message: String| ModelSpecError::Syntax { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let Some((first_no, first)) = lines.next() else {
        return Err(err(1, "empty model spec".into()));
    };
    let words: Vec<&str> = first.split(|c: char| c.is_whitespace() || c == ':').filter(|w| !w.is_empty()).collect();
    match words.as_slice() {
        ["vrank", k] => {
            let k: usize = k.parse().map_err(|_| err(first_no, format!("bad rank `{k}`")))?;
            if let Some((no, extra)) = lines.next() {
                return Err(err(no, format!("unexpected `{extra}` after vrank")));
            }
            Ok(Model::vrank(k)?)
        }
        ["digraph"] => {
            let mut nodes: Vec<String> = Vec::new();
            let mut edges = Vec::new();
            for (no, line) in lines {
                let w: Vec<&str> = line.split_whitespace().collect();
                match w.as_slice() {
                    ["node", id] => {
                        if nodes.iter().any(|n| n == id) {
                            return Err(err(no, format!("duplicate node `{id}`")));
                        }
                        nodes.push((*id).to_owned());
                    }
                    ["edge", a, b] => {
                        let find = |id: &str| {
                            nodes.iter().position(|n| n == id).ok_or_else(|| err(no, format!("unknown node `{id}`")))
                        };
                        edges.push((find(a)?, find(b)?));
                    }
                    _ => return Err(err(no, format!("expected `node <id>` or `edge <a> <b>`, found `{line}`"))),
                }
            }
            Ok(Model::Digraph(Digraph::new(nodes, edges)))
        }
        _ => Err(err(first_no, format!("expected `vrank <k>` or `digraph`, found `{first}`"))),
    }
}

// ---------------------------------------------------------------------------
// Environments

/// Assignment of set variables, index variables and families to elements.
/// Index variables and families supplied here use element keys.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Env {
    pub set_vars: BTreeMap<VarName, usize>,
    pub index_vars: BTreeMap<VarName, usize>,
    pub families: BTreeMap<VarName, BTreeMap<usize, usize>>,
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    pub fn with(mut self, x: VarName, e: usize) -> Self {
        self.set_vars.insert(x, e);
        self
    }
}

// ---------------------------------------------------------------------------
// Compilation to slot form

#[derive(Clone, Debug)]
enum CTerm {
    Set(usize),
    Node(usize),
    App { family: VarName, slot: usize, key: CKey },
}

#[derive(Clone, Debug)]
enum CKey {
    Slot(usize),
    Fixed(usize),
}

#[derive(Clone, Debug)]
enum CDomain {
    Labels(usize),
    Members(CTerm),
}

#[derive(Clone, Debug)]
enum C {
    Const(bool),
    Mem(CTerm, CTerm),
    Eq(CTerm, CTerm),
    Not(Box<C>),
    And(Box<C>, Box<C>),
    Or(Box<C>, Box<C>),
    Implies(Box<C>, Box<C>),
    Iff(Box<C>, Box<C>),
    /// Set quantifier; with a guard `g` it ranges over the members of `g` only.
    Quant { exists: bool, slot: usize, guard: Option<CTerm>, body: Box<C> },
    Family { slot: usize, domain: CDomain, body: Box<C> },
    IndexQuant { exists: bool, slot: usize, domain: CDomain, body: Box<C> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Labels(HfSet),
    Elements,
}

struct Compiler<'m> {
    model: &'m Model,
    sets: Vec<(VarName, usize)>,
    indices: Vec<(VarName, usize, Kind)>,
    families: Vec<(VarName, usize, Kind)>,
    set_slots: usize,
    index_slots: usize,
    family_slots: usize,
}

impl<'m> Compiler<'m> {
    fn set_term(&self, t: &Term) -> Result<CTerm, EvalError> {
        match t {
            Term::Var(v) => self
                .sets
                .iter()
                .rev()
                .find(|(n, _)| n == v)
                .map(|(_, s)| CTerm::Set(*s))
                .ok_or_else(|| EvalError::Unassigned(v.clone())),
            Term::Lit(h) => self.model.denote(h).map(CTerm::Node),
            Term::App { family, index } => {
                let (_, slot, kind) = self
                    .families
                    .iter()
                    .rev()
                    .find(|(n, _, _)| n == family)
                    .ok_or_else(|| EvalError::UnboundFamily(family.clone()))?;
                let key = match index {
                    Index::Var(i) => {
                        let (_, islot, ikind) = self
                            .indices
                            .iter()
                            .rev()
                            .find(|(n, _, _)| n == i)
                            .ok_or_else(|| EvalError::UnboundIndex(i.clone()))?;
                        if ikind != kind {
                            return Err(EvalError::IndexKindMismatch { index: i.clone(), family: family.clone() });
                        }
                        CKey::Slot(*islot)
                    }
                    Index::Const(c) => match kind {
                        Kind::Labels(l) => CKey::Fixed(l.position(c).ok_or_else(|| EvalError::LabelOutsideDomain {
                            family: family.clone(),
                            label: c.to_string(),
                        })?),
                        Kind::Elements => CKey::Fixed(self.model.denote(c)?),
                    },
                };
                Ok(CTerm::App { family: family.clone(), slot: *slot, key })
            }
        }
    }

    fn domain(&self, t: &Term) -> Result<(CDomain, Kind), EvalError> {
        match t {
            Term::Lit(h) => Ok((CDomain::Labels(h.len()), Kind::Labels(h.clone()))),
            Term::Var(_) => Ok((CDomain::Members(self.set_term(t)?), Kind::Elements)),
            Term::App { .. } => Err(EvalError::BadIndexSet),
        }
    }

    fn formula(&mut self, phi: &Formula) -> Result<C, EvalError> {
        let b = |c: C| Box::new(c);
        Ok(match phi {
            Formula::Mem(a, t) => C::Mem(self.set_term(a)?, self.set_term(t)?),
            Formula::Eq(a, t) => C::Eq(self.set_term(a)?, self.set_term(t)?),
            Formula::Not(a) => C::Not(b(self.formula(a)?)),
            Formula::And(l, r) => C::And(b(self.formula(l)?), b(self.formula(r)?)),
            Formula::Or(l, r) => C::Or(b(self.formula(l)?), b(self.formula(r)?)),
            Formula::Implies(l, r) => C::Implies(b(self.formula(l)?), b(self.formula(r)?)),
            Formula::Iff(l, r) => C::Iff(b(self.formula(l)?), b(self.formula(r)?)),
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let exists = matches!(phi, Formula::Exists(..));
                let slot = self.sets.len();
                self.set_slots = self.set_slots.max(slot + 1);
                self.sets.push((x.clone(), slot));
                let body = self.formula(body);
                self.sets.pop();
                guarded(exists, slot, body?)
            }
            Formula::ForallFamily { family, index_var, index_set, body } => {
                let (domain, kind) = self.domain(index_set)?;
                let body = family_scope_body(index_var, index_set, body);
                let slot = self.families.len();
                self.family_slots = self.family_slots.max(slot + 1);
                self.families.push((family.clone(), slot, kind));
                let body = self.formula(&body);
                self.families.pop();
                C::Family { slot, domain, body: b(body?) }
            }
            Formula::ExistsIndex { index_var, index_set, body } | Formula::ForallIndex { index_var, index_set, body } => {
                let exists = matches!(phi, Formula::ExistsIndex { .. });
                let (domain, kind) = self.domain(index_set)?;
                let slot = self.indices.len();
                self.index_slots = self.index_slots.max(slot + 1);
                self.indices.push((index_var.clone(), slot, kind));
                let body = self.formula(body);
                self.indices.pop();
                C::IndexQuant { exists, slot, domain, body: b(body?) }
            }
        })
    }
}

fn flatten_and(c: C, out: &mut Vec<C>) {
    match c {
        C::And(l, r) => {
            flatten_and(*l, out);
            flatten_and(*r, out);
        }
        other => out.push(other),
    }
}

/// Takes out the first conjunct of the form `x in t` (with `t` not `x`).
fn take_guard(parts: &mut Vec<C>, slot: usize) -> Option<CTerm> {
    let pos = parts.iter().position(|p| {
        matches!(p, C::Mem(CTerm::Set(s), t) if *s == slot && !matches!(t, CTerm::Set(u) if *u == slot) && !matches!(t, CTerm::App { .. }))
    })?;
    match parts.remove(pos) {
        C::Mem(_, t) => Some(t),
        _ => unreachable!(),
    }
}

fn rejoin(parts: Vec<C>) -> Option<C> {
    parts.into_iter().reduce(|l, r| C::And(Box::new(l), Box::new(r)))
}

/// `E x . (x in t /\ R)` and `A x . (x in t /\ P -> R)` only need to range over
/// the members of `t`.
fn guarded(exists: bool, slot: usize, body: C) -> C {
    let unguarded = |body| C::Quant { exists, slot, guard: None, body: Box::new(body) };
    if exists {
        let mut parts = Vec::new();
        flatten_and(body, &mut parts);
        match take_guard(&mut parts, slot) {
            Some(g) => C::Quant { exists, slot, guard: Some(g), body: Box::new(rejoin(parts).unwrap_or(C::Const(true))) },
            None => unguarded(rejoin(parts).expect("nonempty")),
        }
    } else {
        match body {
            C::Implies(premise, conclusion) => {
                let mut parts = Vec::new();
                flatten_and(*premise, &mut parts);
                match take_guard(&mut parts, slot) {
                    Some(g) => {
                        let body = match rejoin(parts) {
                            Some(p) => C::Implies(Box::new(p), conclusion),
                            None => *conclusion,
                        };
                        C::Quant { exists, slot, guard: Some(g), body: Box::new(body) }
                    }
                    None => unguarded(C::Implies(Box::new(rejoin(parts).expect("nonempty")), conclusion)),
                }
            }
            other => unguarded(other),
        }
    }
}

// ---------------------------------------------------------------------------
// Evaluation

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    pub budget: u64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { budget: DEFAULT_BUDGET }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvalStats {
    /// Environment extensions: one per quantifier instance tried.
    pub extensions: u64,
    /// Family mappings inspected by family binders.
    pub family_mappings: u64,
}

#[derive(Clone, Debug, Default)]
struct FamilyValue {
    keys: Vec<usize>,
    values: Vec<usize>,
}

struct Machine<'m> {
    model: &'m Model,
    sets: Vec<usize>,
    indices: Vec<usize>,
    families: Vec<FamilyValue>,
    budget: u64,
    stats: EvalStats,
}

impl Machine<'_> {
    fn tick(&mut self) -> Result<(), EvalError> {
        self.stats.extensions += 1;
        if self.stats.extensions > self.budget {
            Err(EvalError::BudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }

    fn term(&self, t: &CTerm) -> Result<usize, EvalError> {
        match t {
            CTerm::Set(s) => Ok(self.sets[*s]),
            CTerm::Node(n) => Ok(*n),
            CTerm::App { family, slot, key } => {
                let k = match key {
                    CKey::Slot(s) => self.indices[*s],
                    CKey::Fixed(k) => *k,
                };
                let f = &self.families[*slot];
                f.keys
                    .binary_search(&k)
                    .map(|p| f.values[p])
                    .map_err(|_| EvalError::LabelOutsideDomain { family: family.clone(), label: self.model.label(k) })
            }
        }
    }

    fn domain(&self, d: &CDomain) -> Result<Vec<usize>, EvalError> {
        match d {
            CDomain::Labels(n) => Ok((0..*n).collect()),
            CDomain::Members(t) => Ok(self.model.members(self.term(t)?).to_vec()),
        }
    }

    fn eval(&mut self, c: &C) -> Result<bool, EvalError> {
        match c {
            C::Const(b) => Ok(*b),
            C::Mem(a, b) => Ok(self.model.is_member(self.term(a)?, self.term(b)?)),
            C::Eq(a, b) => Ok(self.term(a)? == self.term(b)?),
            C::Not(a) => Ok(!self.eval(a)?),
            C::And(l, r) => Ok(self.eval(l)? && self.eval(r)?),
            C::Or(l, r) => Ok(self.eval(l)? || self.eval(r)?),
            C::Implies(l, r) => Ok(!self.eval(l)? || self.eval(r)?),
            C::Iff(l, r) => Ok(self.eval(l)? == self.eval(r)?),
            C::Quant { exists, slot, guard, body } => {
                let range: Vec<usize> = match guard {
                    Some(g) => self.model.members(self.term(g)?).to_vec(),
                    None => (0..self.model.size()).collect(),
                };
                for e in range {
                    self.tick()?;
                    self.sets[*slot] = e;
                    if self.eval(body)? == *exists {
                        return Ok(*exists);
                    }
                }
                Ok(!*exists)
            }
            C::IndexQuant { exists, slot, domain, body } => {
                for k in self.domain(domain)? {
                    self.tick()?;
                    self.indices[*slot] = k;
                    if self.eval(body)? == *exists {
                        return Ok(*exists);
                    }
                }
                Ok(!*exists)
            }
            C::Family { slot, domain, body } => {
                let keys = self.domain(domain)?;
                let n = self.model.size();
                let m = keys.len();
                if n == 0 && m > 0 {
                    return Ok(true);
                }
                self.families[*slot] = FamilyValue { keys, values: vec![0; m] };
                loop {
                    self.tick()?;
                    self.stats.family_mappings += 1;
                    if !self.eval(body)? {
                        return Ok(false);
                    }
                    // Odometer step over [0, n)^m.
                    let values = &mut self.families[*slot].values;
                    let mut p = 0;
                    while p < m {
                        values[p] += 1;
                        if values[p] < n {
                            break;
                        }
                        values[p] = 0;
                        p += 1;
                    }
                    if p == m {
                        return Ok(true);
                    }
                }
            }
        }
    }
}

/// Evaluator bound to one model, accumulating statistics across calls.
pub struct Evaluator<'m> {
    model: &'m Model,
    pub options: EvalOptions,
    pub stats: EvalStats,
}

impl<'m> Evaluator<'m> {
    pub fn new(model: &'m Model) -> Self {
        Evaluator { model, options: EvalOptions::default(), stats: EvalStats::default() }
    }

    pub fn with_options(model: &'m Model, options: EvalOptions) -> Self {
        Evaluator { model, options, stats: EvalStats::default() }
    }

    pub fn eval(&mut self, env: &Env, phi: &Formula) -> Result<bool, EvalError> {
        let n = self.model.size();
        let mut compiler = Compiler {
            model: self.model,
            sets: Vec::new(),
            indices: Vec::new(),
            families: Vec::new(),
            set_slots: 0,
            index_slots: 0,
            family_slots: 0,
        };
        let mut machine_sets = Vec::new();
        for (k, (name, &e)) in env.set_vars.iter().enumerate() {
            debug_assert!(e < n);
            compiler.sets.push((name.clone(), k));
            machine_sets.push(e);
        }
        let mut machine_indices = Vec::new();
        for (k, (name, &e)) in env.index_vars.iter().enumerate() {
            compiler.indices.push((name.clone(), k, Kind::Elements));
            machine_indices.push(e);
        }
        let mut machine_families = Vec::new();
        for (k, (name, map)) in env.families.iter().enumerate() {
            compiler.families.push((name.clone(), k, Kind::Elements));
            machine_families.push(FamilyValue {
                keys: map.keys().copied().collect(),
                values: map.values().copied().collect(),
            });
        }
        let code = compiler.formula(phi)?;
        machine_sets.resize(compiler.set_slots.max(machine_sets.len()), 0);
        machine_indices.resize(compiler.index_slots.max(machine_indices.len()), 0);
        machine_families.resize(compiler.family_slots.max(machine_families.len()), FamilyValue::default());
        let mut machine = Machine {
            model: self.model,
            sets: machine_sets,
            indices: machine_indices,
            families: machine_families,
            budget: self.options.budget.saturating_add(self.stats.extensions),
            stats: self.stats,
        };
        let r = machine.eval(&code);
        self.stats = machine.stats;
        r
    }

    /// True iff `phi` holds under every assignment of its free set variables.
    pub fn holds(&mut self, phi: &Formula) -> Result<bool, EvalError> {
        let fv: Vec<VarName> = free_vars(phi).into_iter().collect();
        let n = self.model.size();
        let mut values = vec![0usize; fv.len()];
        if n == 0 && !fv.is_empty() {
            return Ok(true);
        }
        loop {
            let env = Env {
                set_vars: fv.iter().cloned().zip(values.iter().copied()).collect(),
                ..Env::default()
            };
            if !self.eval(&env, phi)? {
                return Ok(false);
            }
            let mut p = 0;
            while p < values.len() {
                values[p] += 1;
                if values[p] < n {
                    break;
                }
                values[p] = 0;
                p += 1;
            }
            if p == values.len() {
                return Ok(true);
            }
        }
    }
}

pub fn eval_formula(model: &Model, env: &Env, phi: &Formula) -> Result<bool, EvalError> {
    Evaluator::new(model).eval(env, phi)
}

/// Truth value of each of the eleven axioms.
pub fn check_axioms(model: &Model) -> Result<BTreeMap<AxiomName, bool>, EvalError> {
    check_axioms_with(model, EvalOptions::default())
}

pub fn check_axioms_with(model: &Model, options: EvalOptions) -> Result<BTreeMap<AxiomName, bool>, EvalError> {
    AxiomName::ALL
        .par_iter()
        .map(|&name| {
            let v = Evaluator::with_options(model, options).eval(&Env::new(), &axiom_formula(name))?;
            Ok((name, v))
        })
        .collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountermodelError {
    #[error("countermodel search is limited to {MAX_COUNTERMODEL_NODES} nodes, got {0}")]
    TooManyNodes(usize),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Universal closure over the free variables, in name order.
pub fn universal_closure(phi: &Formula) -> Formula {
    free_vars(phi).into_iter().rev().fold(phi.clone(), |acc, v| Formula::forall(v, acc))
}

/// Smallest digraph (by node count, then edge mask) in which the universal
/// closure of `phi` is false. Digraphs in which a literal of `phi` does not
/// denote are skipped.
pub fn find_countermodel(phi: &Formula, max_nodes: usize) -> Result<Option<Model>, CountermodelError> {
    find_countermodel_with(phi, max_nodes, EvalOptions::default())
}

pub fn find_countermodel_with(phi: &Formula, max_nodes: usize, options: EvalOptions) -> Result<Option<Model>, CountermodelError> {
    if max_nodes > MAX_COUNTERMODEL_NODES {
        return Err(CountermodelError::TooManyNodes(max_nodes));
    }
    let closed = universal_closure(phi);
    for count in 0..=max_nodes {
        let hit = (0..(1u64 << (count * count)))
            .into_par_iter()
            .map(|mask| {
                let model = Model::Digraph(Digraph::from_mask(count, mask));
                match Evaluator::with_options(&model, options).eval(&Env::new(), &closed) {
                    Ok(v) => Ok(Some(v)),
                    Err(EvalError::Undenotable(_)) => Ok(None),
                    Err(e) => Err(e),
                }
                .map(|v| (mask, v))
            })
            .find_first(|r| !matches!(r, Ok((_, Some(true)) | (_, None))));
        match hit {
            Some(Ok((mask, _))) => return Ok(Some(Model::Digraph(Digraph::from_mask(count, mask)))),
            Some(Err(e)) => return Err(e.into()),
            None => {}
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeReport {
    pub holds: bool,
    /// For a formula of the form `E x . B`, the first element witnessing it.
    pub witness: Option<String>,
}

impl fmt::Display for SchemeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.holds)?;
        if let Some(w) = &self.witness {
            write!(f, " (witness {w})")?;
        }
        Ok(())
    }
}

/// Evaluates a closed scheme instance and reports an outermost existential witness.
pub fn check_scheme_instance(model: &Model, instance: &Formula) -> Result<SchemeReport, EvalError> {
    check_scheme_instance_with(model, instance, EvalOptions::default())
}

pub fn check_scheme_instance_with(model: &Model, instance: &Formula, options: EvalOptions) -> Result<SchemeReport, EvalError> {
    let mut ev = Evaluator::with_options(model, options);
    let holds = ev.eval(&Env::new(), instance)?;
    let mut witness = None;
    if let (true, Formula::Exists(x, body)) = (holds, instance) {
        for e in 0..model.size() {
            if ev.eval(&Env::new().with(x.clone(), e), body)? {
                witness = Some(model.label(e));
                break;
            }
        }
    }
    Ok(SchemeReport { holds, witness })
}
