//! Abstract syntax of the extended first-order language.
//!
//! Besides ordinary set variables the language has *families* of variables
//! `u[i]` bound by a family binder `fam u[i] in X . phi`. A family application
//! carries an [`Index`], which is either a generic index variable or a constant
//! label (an [`HfSet`]). Bounded index quantifiers `E i in X . phi` and
//! `A i in X . phi` range over the same index set as the family they talk about.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::hf::HfSet;

/// Words that can never be used as identifiers.
pub const RESERVED: &[&str] = &[
    "A", "E", "fam", "in", "qed", "axiom", "el1", "el2", "expand", "mp", "taut", "ui", "ug",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NameError {
    #[error("empty identifier")]
    Empty,
    #[error("identifier `{0}` contains a character other than ASCII letters, digits or `_`")]
    BadChar(String),
    #[error("identifier `{0}` begins with a digit")]
    LeadingDigit(String),
    #[error("`{0}` is a reserved word")]
    Reserved(String),
}

/// Identifier of a set variable, index variable or family.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarName(Arc<str>);

impl VarName {
    pub fn new(text: &str) -> Result<Self, NameError> {
        let first = text.chars().next().ok_or(NameError::Empty)?;
        if !text.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(NameError::BadChar(text.to_owned()));
        }
        if first.is_ascii_digit() {
            return Err(NameError::LeadingDigit(text.to_owned()));
        }
        if RESERVED.contains(&text) {
            return Err(NameError::Reserved(text.to_owned()));
        }
        Ok(VarName(text.into()))
    }

    /// Skips validation; used for internal names such as de Bruijn placeholders.
    pub(crate) fn raw(text: impl Into<Arc<str>>) -> Self {
        VarName(text.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Convenience for tests and generators; panics on invalid names.
pub fn var(name: &str) -> VarName {
    VarName::new(name).unwrap_or_else(|e| panic!("{e}"))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Index {
    Var(VarName),
    Const(HfSet),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(VarName),
    App { family: VarName, index: Index },
    Lit(HfSet),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(var(name))
    }

    pub fn app(family: &str, index: Index) -> Self {
        Term::App { family: var(family), index }
    }

    pub fn as_var(&self) -> Option<&VarName> {
        match self {
            Term::Var(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Mem(Term, Term),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(VarName, Box<Formula>),
    Exists(VarName, Box<Formula>),
    ForallFamily {
        family: VarName,
        index_var: VarName,
        index_set: Term,
        body: Box<Formula>,
    },
    ExistsIndex {
        index_var: VarName,
        index_set: Term,
        body: Box<Formula>,
    },
    ForallIndex {
        index_var: VarName,
        index_set: Term,
        body: Box<Formula>,
    },
}

/// Path from the root to a subformula or term: the child number taken at each
/// step. Children are numbered left to right; a family binder's index set is
/// child 0 and its body child 1, as are an index quantifier's.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn child(&self, k: usize) -> Position {
        let mut p = self.0.clone();
        p.push(k);
        Position(p)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl Formula {
    pub fn mem(a: Term, b: Term) -> Self {
        Formula::Mem(a, b)
    }

    pub fn eq(a: Term, b: Term) -> Self {
        Formula::Eq(a, b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Self {
        Formula::Not(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(x: VarName, body: Formula) -> Self {
        Formula::Forall(x, Box::new(body))
    }

    pub fn exists(x: VarName, body: Formula) -> Self {
        Formula::Exists(x, Box::new(body))
    }

    pub fn forall_family(family: VarName, index_var: VarName, index_set: Term, body: Formula) -> Self {
        Formula::ForallFamily { family, index_var, index_set, body: Box::new(body) }
    }

    pub fn exists_index(index_var: VarName, index_set: Term, body: Formula) -> Self {
        Formula::ExistsIndex { index_var, index_set, body: Box::new(body) }
    }

    pub fn forall_index(index_var: VarName, index_set: Term, body: Formula) -> Self {
        Formula::ForallIndex { index_var, index_set, body: Box::new(body) }
    }

    /// Left-nested conjunction; `None` for an empty list.
    pub fn conj(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    pub fn disj(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::or)
    }

    pub fn is_propositional_connective(&self) -> bool {
        matches!(
            self,
            Formula::Not(_)
                | Formula::And(..)
                | Formula::Or(..)
                | Formula::Implies(..)
                | Formula::Iff(..)
        )
    }

    /// True if the formula contains a family binder or an index quantifier.
    pub fn has_family_syntax(&self) -> bool {
        match self {
            Formula::Mem(a, b) | Formula::Eq(a, b) => {
                matches!(a, Term::App { .. }) || matches!(b, Term::App { .. })
            }
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.has_family_syntax(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.has_family_syntax() || b.has_family_syntax()
            }
            Formula::ForallFamily { .. } | Formula::ExistsIndex { .. } | Formula::ForallIndex { .. } => true,
        }
    }

    /// Every identifier occurring anywhere, in any namespace.
    pub fn all_names(&self) -> BTreeSet<VarName> {
        let mut out = BTreeSet::new();
        collect_names(self, &mut out);
        out
    }
}

fn term_names(t: &Term, out: &mut BTreeSet<VarName>) {
    match t {
        Term::Var(v) => {
            out.insert(v.clone());
        }
        Term::App { family, index } => {
            out.insert(family.clone());
            if let Index::Var(i) = index {
                out.insert(i.clone());
            }
        }
        Term::Lit(_) => {}
    }
}

fn collect_names(phi: &Formula, out: &mut BTreeSet<VarName>) {
    match phi {
        Formula::Mem(a, b) | Formula::Eq(a, b) => {
            term_names(a, out);
            term_names(b, out);
        }
        Formula::Not(a) => collect_names(a, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            collect_names(a, out);
            collect_names(b, out);
        }
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            out.insert(x.clone());
            collect_names(a, out);
        }
        Formula::ForallFamily { family, index_var, index_set, body } => {
            out.insert(family.clone());
            out.insert(index_var.clone());
            term_names(index_set, out);
            collect_names(body, out);
        }
        Formula::ExistsIndex { index_var, index_set, body }
        | Formula::ForallIndex { index_var, index_set, body } => {
            out.insert(index_var.clone());
            term_names(index_set, out);
            collect_names(body, out);
        }
    }
}

/// `base` followed by the smallest numeric suffix `n >= 1` not in `used`.
pub fn fresh_name(base: &VarName, used: &BTreeSet<VarName>) -> VarName {
    (1..)
        .map(|n| VarName::raw(format!("{base}{n}")))
        .find(|c| !used.contains(c))
        .expect("unbounded suffix search")
}

// ---------------------------------------------------------------------------
// Well-formedness

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WfViolation {
    pub position: Position,
    pub message: String,
}

impl fmt::Display for WfViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.message, self.position)
    }
}

/// An index set after name resolution: a literal, a bound set variable
/// (identified by its binder), or a free set variable.
#[derive(Clone, Debug, PartialEq, Eq)]
enum IndexSetId {
    Lit(HfSet),
    Bound(usize),
    Free(VarName),
}

struct WfScope {
    /// (name, binder id) for set variables, innermost last.
    sets: Vec<(VarName, usize)>,
    /// (family name, index-set id) innermost last.
    families: Vec<(VarName, IndexSetId)>,
    /// (index variable, index-set id) innermost last.
    indices: Vec<(VarName, IndexSetId)>,
    free: BTreeSet<VarName>,
    next_id: usize,
}

impl WfScope {
    fn resolve_set(&self, t: &Term) -> Option<IndexSetId> {
        match t {
            Term::Lit(h) => Some(IndexSetId::Lit(h.clone())),
            Term::Var(v) => Some(
                self.sets
                    .iter()
                    .rev()
                    .find(|(n, _)| n == v)
                    .map(|(_, id)| IndexSetId::Bound(*id))
                    .unwrap_or_else(|| IndexSetId::Free(v.clone())),
            ),
            Term::App { .. } => None,
        }
    }

    fn set_in_scope(&self, v: &VarName) -> bool {
        self.free.contains(v) || self.sets.iter().any(|(n, _)| n == v)
    }

    fn family_in_scope(&self, v: &VarName) -> bool {
        self.families.iter().any(|(n, _)| n == v)
    }
}

/// Checks the binding discipline. On failure returns the first violation in
/// left-to-right preorder.
pub fn well_formed(phi: &Formula) -> Result<(), WfViolation> {
    let mut scope = WfScope {
        sets: Vec::new(),
        families: Vec::new(),
        indices: Vec::new(),
        free: free_vars(phi),
        next_id: 0,
    };
    wf_formula(phi, &mut scope, Position::default())
}

fn violation(position: Position, message: impl Into<String>) -> Result<(), WfViolation> {
    Err(WfViolation { position, message: message.into() })
}

fn wf_term(t: &Term, scope: &WfScope, pos: Position) -> Result<(), WfViolation> {
    match t {
        Term::Var(v) => {
            if scope.family_in_scope(v) {
                return violation(pos, format!("`{v}` is used as a set variable inside the scope of family `{v}`"));
            }
            Ok(())
        }
        Term::Lit(_) => Ok(()),
        Term::App { family, index } => {
            let Some((_, fam_set)) = scope.families.iter().rev().find(|(n, _)| n == family) else {
                return violation(pos, format!("family `{family}` is not bound by an enclosing family binder"));
            };
            if let Index::Var(i) = index {
                let Some((_, idx_set)) = scope.indices.iter().rev().find(|(n, _)| n == i) else {
                    return violation(pos, format!("index variable `{i}` is not bound"));
                };
                if idx_set != fam_set {
                    return violation(
                        pos,
                        format!("index variable `{i}` ranges over a different index set than family `{family}`"),
                    );
                }
            }
            Ok(())
        }
    }
}

fn wf_index_set(t: &Term, scope: &WfScope, pos: Position) -> Result<IndexSetId, WfViolation> {
    match scope.resolve_set(t) {
        Some(id) => {
            wf_term(t, scope, pos)?;
            Ok(id)
        }
        None => Err(WfViolation {
            position: pos,
            message: "index set must be a set variable or a literal".into(),
        }),
    }
}

fn wf_formula(phi: &Formula, scope: &mut WfScope, pos: Position) -> Result<(), WfViolation> {
    match phi {
        Formula::Mem(a, b) | Formula::Eq(a, b) => {
            wf_term(a, scope, pos.child(0))?;
            wf_term(b, scope, pos.child(1))
        }
        Formula::Not(a) => wf_formula(a, scope, pos.child(0)),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            wf_formula(a, scope, pos.child(0))?;
            wf_formula(b, scope, pos.child(1))
        }
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            if scope.family_in_scope(x) {
                return violation(pos, format!("`{x}` is bound as a set variable inside the scope of family `{x}`"));
            }
            let id = scope.next_id;
            scope.next_id += 1;
            scope.sets.push((x.clone(), id));
            let r = wf_formula(body, scope, pos.child(0));
            scope.sets.pop();
            r
        }
        Formula::ForallFamily { family, index_var, index_set, body } => {
            let id = wf_index_set(index_set, scope, pos.child(0))?;
            if scope.set_in_scope(family) {
                return violation(pos, format!("`{family}` is bound as a family inside the scope of set variable `{family}`"));
            }
            scope.families.push((family.clone(), id.clone()));
            scope.indices.push((index_var.clone(), id));
            let r = wf_formula(body, scope, pos.child(1));
            scope.indices.pop();
            scope.families.pop();
            r
        }
        Formula::ExistsIndex { index_var, index_set, body }
        | Formula::ForallIndex { index_var, index_set, body } => {
            let id = wf_index_set(index_set, scope, pos.child(0))?;
            scope.indices.push((index_var.clone(), id));
            let r = wf_formula(body, scope, pos.child(1));
            scope.indices.pop();
            r
        }
    }
}

// ---------------------------------------------------------------------------
// Free variables

/// Free set variables. Family names and index variables are never reported.
pub fn free_vars(phi: &Formula) -> BTreeSet<VarName> {
    let mut out = BTreeSet::new();
    let mut bound = Vec::new();
    fv(phi, &mut bound, &mut out);
    out
}

pub fn term_free_vars(t: &Term) -> BTreeSet<VarName> {
    match t {
        Term::Var(v) => [v.clone()].into(),
        _ => BTreeSet::new(),
    }
}

fn fv_term(t: &Term, bound: &[VarName], out: &mut BTreeSet<VarName>) {
    if let Term::Var(v) = t {
        if !bound.contains(v) {
            out.insert(v.clone());
        }
    }
}

fn fv(phi: &Formula, bound: &mut Vec<VarName>, out: &mut BTreeSet<VarName>) {
    match phi {
        Formula::Mem(a, b) | Formula::Eq(a, b) => {
            fv_term(a, bound, out);
            fv_term(b, bound, out);
        }
        Formula::Not(a) => fv(a, bound, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            fv(a, bound, out);
            fv(b, bound, out);
        }
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            bound.push(x.clone());
            fv(a, bound, out);
            bound.pop();
        }
        Formula::ForallFamily { index_set, body, .. }
        | Formula::ExistsIndex { index_set, body, .. }
        | Formula::ForallIndex { index_set, body, .. } => {
            fv_term(index_set, bound, out);
            fv(body, bound, out);
        }
    }
}

/// Is `x` free in `phi`?
pub fn occurs_free(phi: &Formula, x: &VarName) -> bool {
    free_vars(phi).contains(x)
}

/// Does `phi` apply family `fam` (not shadowed by an inner binder of the same
/// name)? With `via = Some(i)` only applications indexed by the free index
/// variable `i` count.
pub fn mentions_family(phi: &Formula, fam: &VarName, via: Option<&VarName>) -> bool {
    fn term_hit(t: &Term, fam: &VarName, via: Option<&VarName>) -> bool {
        match t {
            Term::App { family, index } if family == fam => match via {
                None => true,
                Some(i) => matches!(index, Index::Var(j) if j == i),
            },
            _ => false,
        }
    }
    match phi {
        Formula::Mem(a, b) | Formula::Eq(a, b) => term_hit(a, fam, via) || term_hit(b, fam, via),
        Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => mentions_family(a, fam, via),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            mentions_family(a, fam, via) || mentions_family(b, fam, via)
        }
        Formula::ForallFamily { family, index_var, body, .. } => {
            if family == fam || via == Some(index_var) {
                false
            } else {
                mentions_family(body, fam, via)
            }
        }
        Formula::ExistsIndex { index_var, body, .. } | Formula::ForallIndex { index_var, body, .. } => {
            if via == Some(index_var) {
                false
            } else {
                mentions_family(body, fam, via)
            }
        }
    }
}

/// Does the index variable `i` occur free (in some family application)?
pub fn index_var_free(phi: &Formula, i: &VarName) -> bool {
    fn term_hit(t: &Term, i: &VarName) -> bool {
        matches!(t, Term::App { index: Index::Var(j), .. } if j == i)
    }
    match phi {
        Formula::Mem(a, b) | Formula::Eq(a, b) => term_hit(a, i) || term_hit(b, i),
        Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => index_var_free(a, i),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            index_var_free(a, i) || index_var_free(b, i)
        }
        Formula::ForallFamily { index_var, body, .. }
        | Formula::ExistsIndex { index_var, body, .. }
        | Formula::ForallIndex { index_var, body, .. } => index_var != i && index_var_free(body, i),
    }
}

/// The body of a family binder with the binder's own index variable closed.
///
/// A bare `u[i]` directly under `fam u[i] in X` (not under an index
/// quantifier) is read as holding for every `i` in `X`, so the body is wrapped
/// in `A i in X .` when `i` occurs free in it.
pub fn family_scope_body(index_var: &VarName, index_set: &Term, body: &Formula) -> Formula {
    if index_var_free(body, index_var) {
        Formula::forall_index(index_var.clone(), index_set.clone(), body.clone())
    } else {
        body.clone()
    }
}

// ---------------------------------------------------------------------------
// Substitution

fn subst_term(t: &Term, x: &VarName, by: &Term) -> Term {
    match t {
        Term::Var(v) if v == x => by.clone(),
        _ => t.clone(),
    }
}

/// Capture-avoiding substitution of `t` for the free occurrences of set
/// variable `x`. Bound set variables (and family names) that would capture a
/// variable of `t` are renamed with [`fresh_name`].
pub fn subst_set_var(phi: &Formula, x: &VarName, t: &Term) -> Formula {
    if !occurs_free(phi, x) {
        return phi.clone();
    }
    let mut used = phi.all_names();
    used.extend(term_free_vars(t));
    used.insert(x.clone());
    subst_rec(phi, x, t, &used)
}

fn subst_rec(phi: &Formula, x: &VarName, t: &Term, used: &BTreeSet<VarName>) -> Formula {
    let t_fv = term_free_vars(t);
    match phi {
        Formula::Mem(a, b) => Formula::Mem(subst_term(a, x, t), subst_term(b, x, t)),
        Formula::Eq(a, b) => Formula::Eq(subst_term(a, x, t), subst_term(b, x, t)),
        Formula::Not(a) => Formula::not(subst_rec(a, x, t, used)),
        Formula::And(a, b) => Formula::and(subst_rec(a, x, t, used), subst_rec(b, x, t, used)),
        Formula::Or(a, b) => Formula::or(subst_rec(a, x, t, used), subst_rec(b, x, t, used)),
        Formula::Implies(a, b) => Formula::implies(subst_rec(a, x, t, used), subst_rec(b, x, t, used)),
        Formula::Iff(a, b) => Formula::iff(subst_rec(a, x, t, used), subst_rec(b, x, t, used)),
        Formula::Forall(y, body) | Formula::Exists(y, body) => {
            let rebuild = |y: VarName, b: Formula| match phi {
                Formula::Forall(..) => Formula::forall(y, b),
                _ => Formula::exists(y, b),
            };
            if y == x || !occurs_free(body, x) {
                return phi.clone();
            }
            if t_fv.contains(y) {
                let y2 = fresh_name(y, used);
                let mut used2 = used.clone();
                used2.insert(y2.clone());
                let renamed = subst_rec(body, y, &Term::Var(y2.clone()), &used2);
                rebuild(y2, subst_rec(&renamed, x, t, &used2))
            } else {
                rebuild(y.clone(), subst_rec(body, x, t, used))
            }
        }
        Formula::ForallFamily { family, index_var, index_set, body } => {
            let index_set = subst_term(index_set, x, t);
            if t_fv.contains(family) && occurs_free(body, x) {
                let f2 = fresh_name(family, used);
                let mut used2 = used.clone();
                used2.insert(f2.clone());
                let renamed = rename_family(body, family, &f2);
                Formula::forall_family(f2, index_var.clone(), index_set, subst_rec(&renamed, x, t, &used2))
            } else {
                Formula::forall_family(family.clone(), index_var.clone(), index_set, subst_rec(body, x, t, used))
            }
        }
        Formula::ExistsIndex { index_var, index_set, body } => Formula::exists_index(
            index_var.clone(),
            subst_term(index_set, x, t),
            subst_rec(body, x, t, used),
        ),
        Formula::ForallIndex { index_var, index_set, body } => Formula::forall_index(
            index_var.clone(),
            subst_term(index_set, x, t),
            subst_rec(body, x, t, used),
        ),
    }
}

/// Renames free applications of family `from` to `to`.
pub fn rename_family(phi: &Formula, from: &VarName, to: &VarName) -> Formula {
    map_terms_family(phi, from, &|index| Term::App { family: to.clone(), index: index.clone() })
}

/// Rewrites every free application of `fam` with `f(index)`.
fn map_terms_family(phi: &Formula, fam: &VarName, f: &dyn Fn(&Index) -> Term) -> Formula {
    let mt = |t: &Term| match t {
        Term::App { family, index } if family == fam => f(index),
        _ => t.clone(),
    };
    let rec = |a: &Formula| map_terms_family(a, fam, f);
    match phi {
        Formula::Mem(a, b) => Formula::Mem(mt(a), mt(b)),
        Formula::Eq(a, b) => Formula::Eq(mt(a), mt(b)),
        Formula::Not(a) => Formula::not(rec(a)),
        Formula::And(a, b) => Formula::and(rec(a), rec(b)),
        Formula::Or(a, b) => Formula::or(rec(a), rec(b)),
        Formula::Implies(a, b) => Formula::implies(rec(a), rec(b)),
        Formula::Iff(a, b) => Formula::iff(rec(a), rec(b)),
        Formula::Forall(y, a) => Formula::forall(y.clone(), rec(a)),
        Formula::Exists(y, a) => Formula::exists(y.clone(), rec(a)),
        Formula::ForallFamily { family, .. } if family == fam => phi.clone(),
        Formula::ForallFamily { family, index_var, index_set, body } => {
            Formula::forall_family(family.clone(), index_var.clone(), index_set.clone(), rec(body))
        }
        Formula::ExistsIndex { index_var, index_set, body } => {
            Formula::exists_index(index_var.clone(), index_set.clone(), rec(body))
        }
        Formula::ForallIndex { index_var, index_set, body } => {
            Formula::forall_index(index_var.clone(), index_set.clone(), rec(body))
        }
    }
}

/// Replaces the free index variable `i` by the constant label `c`.
pub fn subst_index(phi: &Formula, i: &VarName, c: &HfSet) -> Formula {
    let mt = |t: &Term| match t {
        Term::App { family, index: Index::Var(j) } if j == i => {
            Term::App { family: family.clone(), index: Index::Const(c.clone()) }
        }
        _ => t.clone(),
    };
    let rec = |a: &Formula| subst_index(a, i, c);
    match phi {
        Formula::Mem(a, b) => Formula::Mem(mt(a), mt(b)),
        Formula::Eq(a, b) => Formula::Eq(mt(a), mt(b)),
        Formula::Not(a) => Formula::not(rec(a)),
        Formula::And(a, b) => Formula::and(rec(a), rec(b)),
        Formula::Or(a, b) => Formula::or(rec(a), rec(b)),
        Formula::Implies(a, b) => Formula::implies(rec(a), rec(b)),
        Formula::Iff(a, b) => Formula::iff(rec(a), rec(b)),
        Formula::Forall(y, a) => Formula::forall(y.clone(), rec(a)),
        Formula::Exists(y, a) => Formula::exists(y.clone(), rec(a)),
        Formula::ForallFamily { index_var, .. }
        | Formula::ExistsIndex { index_var, .. }
        | Formula::ForallIndex { index_var, .. }
            if index_var == i =>
        {
            phi.clone()
        }
        Formula::ForallFamily { family, index_var, index_set, body } => {
            Formula::forall_family(family.clone(), index_var.clone(), index_set.clone(), rec(body))
        }
        Formula::ExistsIndex { index_var, index_set, body } => {
            Formula::exists_index(index_var.clone(), index_set.clone(), rec(body))
        }
        Formula::ForallIndex { index_var, index_set, body } => {
            Formula::forall_index(index_var.clone(), index_set.clone(), rec(body))
        }
    }
}

/// Canonical false formula used for an empty disjunction inside `context`:
/// `~ v = v` for the first free set variable `v` of `context`, or
/// `~ A w . w = w` (with `w` fresh) when `context` has none.
pub fn falsum(context: &Formula, avoid: &BTreeSet<VarName>) -> Formula {
    Formula::not(verum(context, avoid))
}

/// Canonical true formula, dual of [`falsum`].
pub fn verum(context: &Formula, avoid: &BTreeSet<VarName>) -> Formula {
    match first_free_set_var(context) {
        Some(v) => Formula::eq(Term::Var(v.clone()), Term::Var(v)),
        None => {
            let base = var("w");
            let w = if avoid.contains(&base) { fresh_name(&base, avoid) } else { base };
            Formula::forall(w.clone(), Formula::eq(Term::Var(w.clone()), Term::Var(w)))
        }
    }
}

fn first_free_set_var(phi: &Formula) -> Option<VarName> {
    fn go(phi: &Formula, bound: &mut Vec<VarName>) -> Option<VarName> {
        let in_term = |t: &Term, bound: &Vec<VarName>| match t {
            Term::Var(v) if !bound.contains(v) => Some(v.clone()),
            _ => None,
        };
        match phi {
            Formula::Mem(a, b) | Formula::Eq(a, b) => in_term(a, bound).or_else(|| in_term(b, bound)),
            Formula::Not(a) => go(a, bound),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                go(a, bound).or_else(|| go(b, bound))
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                bound.push(x.clone());
                let r = go(a, bound);
                bound.pop();
                r
            }
            Formula::ForallFamily { index_set, body, .. }
            | Formula::ExistsIndex { index_set, body, .. }
            | Formula::ForallIndex { index_set, body, .. } => in_term(index_set, bound).or_else(|| go(body, bound)),
        }
    }
    go(phi, &mut Vec::new())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubstError {
    #[error("formula is not a family binder over `{0}`")]
    NotFamilyBinder(VarName),
    #[error("index set of the family binder is not a literal")]
    NotLiteral,
    #[error("assignment is missing labels {missing:?} and has extra labels {extra:?}")]
    DomainMismatch { missing: Vec<HfSet>, extra: Vec<HfSet> },
    #[error("label {0} is outside the index set")]
    LabelOutsideIndexSet(HfSet),
    #[error("assigned term for label {0} is a family application")]
    BadTarget(HfSet),
    #[error("index variable `{0}` of family `{1}` is not bound by an enumerable index quantifier")]
    UnresolvedIndex(VarName, VarName),
}

/// A finite label-to-term assignment for one family.
pub type FamilyAssignment = std::collections::BTreeMap<HfSet, Term>;

/// Instantiates the family binder `phi = fam family[i] in L . body` with the
/// given assignment, eliminating the family.
pub fn subst_family(phi: &Formula, family: &VarName, assignment: &FamilyAssignment) -> Result<Formula, SubstError> {
    let Formula::ForallFamily { family: fam, index_var, index_set, body } = phi else {
        return Err(SubstError::NotFamilyBinder(family.clone()));
    };
    if fam != family {
        return Err(SubstError::NotFamilyBinder(family.clone()));
    }
    let Term::Lit(labels) = index_set else {
        return Err(SubstError::NotLiteral);
    };
    let missing: Vec<HfSet> = labels.elements().iter().filter(|c| !assignment.contains_key(c)).cloned().collect();
    let extra: Vec<HfSet> = assignment.keys().filter(|c| !labels.contains(c)).cloned().collect();
    if !missing.is_empty() || !extra.is_empty() {
        return Err(SubstError::DomainMismatch { missing, extra });
    }
    if let Some((c, _)) = assignment.iter().find(|(_, t)| matches!(t, Term::App { .. })) {
        return Err(SubstError::BadTarget(c.clone()));
    }
    let body = family_scope_body(index_var, index_set, body);
    let mut used = phi.all_names();
    for t in assignment.values() {
        used.extend(term_free_vars(t));
    }
    instantiate(&body, family, labels, assignment, &used)
}

/// Worker for [`subst_family`]: replaces applications of `fam` and enumerates
/// the index quantifiers through which it is applied.
pub(crate) fn instantiate(
    phi: &Formula,
    fam: &VarName,
    labels: &HfSet,
    assignment: &FamilyAssignment,
    used: &BTreeSet<VarName>,
) -> Result<Formula, SubstError> {
    let targets_fv: BTreeSet<VarName> = assignment.values().flat_map(term_free_vars).collect();
    let rec = |a: &Formula| instantiate(a, fam, labels, assignment, used);
    let mt = |t: &Term| -> Result<Term, SubstError> {
        match t {
            Term::App { family, index } if family == fam => match index {
                Index::Const(c) => assignment.get(c).cloned().ok_or_else(|| SubstError::LabelOutsideIndexSet(c.clone())),
                Index::Var(i) => Err(SubstError::UnresolvedIndex(i.clone(), fam.clone())),
            },
            _ => Ok(t.clone()),
        }
    };
    Ok(match phi {
        Formula::Mem(a, b) => Formula::Mem(mt(a)?, mt(b)?),
        Formula::Eq(a, b) => Formula::Eq(mt(a)?, mt(b)?),
        Formula::Not(a) => Formula::not(rec(a)?),
        Formula::And(a, b) => Formula::and(rec(a)?, rec(b)?),
        Formula::Or(a, b) => Formula::or(rec(a)?, rec(b)?),
        Formula::Implies(a, b) => Formula::implies(rec(a)?, rec(b)?),
        Formula::Iff(a, b) => Formula::iff(rec(a)?, rec(b)?),
        Formula::Forall(y, body) | Formula::Exists(y, body) => {
            let (y, body) = if targets_fv.contains(y) && mentions_family(body, fam, None) {
                let y2 = fresh_name(y, used);
                let renamed = subst_set_var(body, y, &Term::Var(y2.clone()));
                (y2, renamed)
            } else {
                (y.clone(), (**body).clone())
            };
            let mut used2 = used.clone();
            used2.insert(y.clone());
            let inner = instantiate(&body, fam, labels, assignment, &used2)?;
            match phi {
                Formula::Forall(..) => Formula::forall(y, inner),
                _ => Formula::exists(y, inner),
            }
        }
        Formula::ForallFamily { family, .. } if family == fam => phi.clone(),
        Formula::ForallFamily { family, index_var, index_set, body } => {
            let (family, body) = if targets_fv.contains(family) && mentions_family(body, fam, None) {
                let f2 = fresh_name(family, used);
                let renamed = rename_family(body, family, &f2);
                (f2, renamed)
            } else {
                (family.clone(), (**body).clone())
            };
            let mut used2 = used.clone();
            used2.insert(family.clone());
            Formula::forall_family(
                family,
                index_var.clone(),
                index_set.clone(),
                instantiate(&body, fam, labels, assignment, &used2)?,
            )
        }
        Formula::ExistsIndex { index_var, index_set, body } | Formula::ForallIndex { index_var, index_set, body } => {
            let existential = matches!(phi, Formula::ExistsIndex { .. });
            if mentions_family(body, fam, Some(index_var)) {
                // Well-formedness guarantees this quantifier ranges over `labels`.
                let parts = labels
                    .elements()
                    .iter()
                    .map(|c| rec(&subst_index(body, index_var, c)))
                    .collect::<Result<Vec<_>, _>>()?;
                let joined = if existential { Formula::disj(parts) } else { Formula::conj(parts) };
                joined.unwrap_or_else(|| {
                    if existential {
                        falsum(body, used)
                    } else {
                        verum(body, used)
                    }
                })
            } else if existential {
                Formula::exists_index(index_var.clone(), index_set.clone(), rec(body)?)
            } else {
                Formula::forall_index(index_var.clone(), index_set.clone(), rec(body)?)
            }
        }
    })
}

// ---------------------------------------------------------------------------
// Alpha-equivalence

#[derive(Default)]
struct AlphaCtx<'a> {
    sets: Vec<(&'a VarName, &'a VarName)>,
    families: Vec<(&'a VarName, &'a VarName)>,
    indices: Vec<(&'a VarName, &'a VarName)>,
}

/// Compares two names under a stack of binder pairs: both must be bound by the
/// same pair, or both free and equal.
fn names_match(stack: &[(&VarName, &VarName)], a: &VarName, b: &VarName) -> bool {
    let left = stack.iter().rposition(|(l, _)| *l == a);
    let right = stack.iter().rposition(|(_, r)| *r == b);
    match (left, right) {
        (Some(p), Some(q)) => p == q,
        (None, None) => a == b,
        _ => false,
    }
}

fn alpha_term(ctx: &AlphaCtx<'_>, s: &Term, t: &Term) -> bool {
    match (s, t) {
        (Term::Var(a), Term::Var(b)) => names_match(&ctx.sets, a, b),
        (Term::Lit(a), Term::Lit(b)) => a == b,
        (Term::App { family: f, index: i }, Term::App { family: g, index: j }) => {
            names_match(&ctx.families, f, g)
                && match (i, j) {
                    (Index::Const(a), Index::Const(b)) => a == b,
                    (Index::Var(a), Index::Var(b)) => names_match(&ctx.indices, a, b),
                    _ => false,
                }
        }
        _ => false,
    }
}

fn alpha<'a>(ctx: &mut AlphaCtx<'a>, p: &'a Formula, q: &'a Formula) -> bool {
    use Formula as F;
    match (p, q) {
        (F::Mem(a, b), F::Mem(c, d)) | (F::Eq(a, b), F::Eq(c, d)) => alpha_term(ctx, a, c) && alpha_term(ctx, b, d),
        (F::Not(a), F::Not(b)) => alpha(ctx, a, b),
        (F::And(a, b), F::And(c, d))
        | (F::Or(a, b), F::Or(c, d))
        | (F::Implies(a, b), F::Implies(c, d))
        | (F::Iff(a, b), F::Iff(c, d)) => alpha(ctx, a, c) && alpha(ctx, b, d),
        (F::Forall(x, a), F::Forall(y, b)) | (F::Exists(x, a), F::Exists(y, b)) => {
            ctx.sets.push((x, y));
            let r = alpha(ctx, a, b);
            ctx.sets.pop();
            r
        }
        (
            F::ForallFamily { family: f, index_var: i, index_set: s, body: a },
            F::ForallFamily { family: g, index_var: j, index_set: t, body: b },
        ) => {
            if !alpha_term(ctx, s, t) {
                return false;
            }
            ctx.families.push((f, g));
            ctx.indices.push((i, j));
            let r = alpha(ctx, a, b);
            ctx.indices.pop();
            ctx.families.pop();
            r
        }
        (
            F::ExistsIndex { index_var: i, index_set: s, body: a },
            F::ExistsIndex { index_var: j, index_set: t, body: b },
        )
        | (
            F::ForallIndex { index_var: i, index_set: s, body: a },
            F::ForallIndex { index_var: j, index_set: t, body: b },
        ) => {
            if !alpha_term(ctx, s, t) {
                return false;
            }
            ctx.indices.push((i, j));
            let r = alpha(ctx, a, b);
            ctx.indices.pop();
            r
        }
        _ => false,
    }
}

/// Equality up to consistent renaming of bound set variables, bound index
/// variables and family names.
pub fn alpha_eq(phi: &Formula, psi: &Formula) -> bool {
    alpha(&mut AlphaCtx::default(), phi, psi)
}

/// Renames every bound name to a positional placeholder (`%s3`, `%f0`, `%i1`)
/// that cannot clash with a user identifier. Two formulas are alpha-equivalent
/// exactly when their normal forms are structurally equal.
pub fn alpha_normalize(phi: &Formula) -> Formula {
    fn lookup(stack: &[(VarName, VarName)], v: &VarName) -> Option<VarName> {
        stack.iter().rev().find(|(n, _)| n == v).map(|(_, p)| p.clone())
    }
    struct Ctx {
        sets: Vec<(VarName, VarName)>,
        families: Vec<(VarName, VarName)>,
        indices: Vec<(VarName, VarName)>,
    }
    fn term(ctx: &Ctx, t: &Term) -> Term {
        match t {
            Term::Var(v) => Term::Var(lookup(&ctx.sets, v).unwrap_or_else(|| v.clone())),
            Term::Lit(h) => Term::Lit(h.clone()),
            Term::App { family, index } => Term::App {
                family: lookup(&ctx.families, family).unwrap_or_else(|| family.clone()),
                index: match index {
                    Index::Var(i) => Index::Var(lookup(&ctx.indices, i).unwrap_or_else(|| i.clone())),
                    Index::Const(c) => Index::Const(c.clone()),
                },
            },
        }
    }
    fn go(ctx: &mut Ctx, phi: &Formula) -> Formula {
        match phi {
            Formula::Mem(a, b) => Formula::Mem(term(ctx, a), term(ctx, b)),
            Formula::Eq(a, b) => Formula::Eq(term(ctx, a), term(ctx, b)),
            Formula::Not(a) => Formula::not(go(ctx, a)),
            Formula::And(a, b) => Formula::and(go(ctx, a), go(ctx, b)),
            Formula::Or(a, b) => Formula::or(go(ctx, a), go(ctx, b)),
            Formula::Implies(a, b) => Formula::implies(go(ctx, a), go(ctx, b)),
            Formula::Iff(a, b) => Formula::iff(go(ctx, a), go(ctx, b)),
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                let p = VarName::raw(format!("%s{}", ctx.sets.len()));
                ctx.sets.push((x.clone(), p.clone()));
                let body = go(ctx, a);
                ctx.sets.pop();
                if matches!(phi, Formula::Forall(..)) {
                    Formula::forall(p, body)
                } else {
                    Formula::exists(p, body)
                }
            }
            Formula::ForallFamily { family, index_var, index_set, body } => {
                let s = term(ctx, index_set);
                let f = VarName::raw(format!("%f{}", ctx.families.len()));
                let i = VarName::raw(format!("%i{}", ctx.indices.len()));
                ctx.families.push((family.clone(), f.clone()));
                ctx.indices.push((index_var.clone(), i.clone()));
                let b = go(ctx, body);
                ctx.indices.pop();
                ctx.families.pop();
                Formula::forall_family(f, i, s, b)
            }
            Formula::ExistsIndex { index_var, index_set, body } | Formula::ForallIndex { index_var, index_set, body } => {
                let s = term(ctx, index_set);
                let i = VarName::raw(format!("%i{}", ctx.indices.len()));
                ctx.indices.push((index_var.clone(), i.clone()));
                let b = go(ctx, body);
                ctx.indices.pop();
                if matches!(phi, Formula::ExistsIndex { .. }) {
                    Formula::exists_index(i, s, b)
                } else {
                    Formula::forall_index(i, s, b)
                }
            }
        }
    }
    go(&mut Ctx { sets: Vec::new(), families: Vec::new(), indices: Vec::new() }, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hf::{canonical, zermelo_numeral};

    fn v(s: &str) -> Term {
        Term::var(s)
    }

    /// `A X . fam u[i] in X . E Z . A y . (y in Z <-> E i in X . y = u[i])`
    fn fam_axiom() -> Formula {
        Formula::forall(var("X"), fam_body(v("X")))
    }

    fn fam_body(x: Term) -> Formula {
        Formula::forall_family(
            var("u"),
            var("i"),
            x.clone(),
            Formula::exists(
                var("Z"),
                Formula::forall(
                    var("y"),
                    Formula::iff(
                        Formula::mem(v("y"), v("Z")),
                        Formula::exists_index(
                            var("i"),
                            x,
                            Formula::eq(v("y"), Term::app("u", Index::Var(var("i")))),
                        ),
                    ),
                ),
            ),
        )
    }

    #[test]
    fn fam_is_well_formed_and_closed() {
        assert_eq!(well_formed(&fam_axiom()), Ok(()));
        assert!(free_vars(&fam_axiom()).is_empty());
        assert_eq!(free_vars(&fam_body(v("X"))), [var("X")].into());
    }

    #[test]
    fn unbound_family_rejected() {
        let phi = Formula::mem(Term::app("u", Index::Const(HfSet::empty())), v("y"));
        let err = well_formed(&phi).unwrap_err();
        assert_eq!(err.position, Position(vec![0]));
    }

    #[test]
    fn index_set_mismatch_rejected() {
        let phi = Formula::forall_family(
            var("u"),
            var("i"),
            v("X"),
            Formula::exists_index(var("i"), v("Y"), Formula::eq(v("y"), Term::app("u", Index::Var(var("i"))))),
        );
        assert!(well_formed(&phi).is_err());
    }

    #[test]
    fn rebinding_index_set_variable_breaks_identity() {
        // `fam u[i] in X . A X . E j in X . y = u[j]`: the inner X is a different set.
        let phi = Formula::forall_family(
            var("u"),
            var("i"),
            v("X"),
            Formula::forall(
                var("X"),
                Formula::exists_index(var("j"), v("X"), Formula::eq(v("y"), Term::app("u", Index::Var(var("j"))))),
            ),
        );
        assert!(well_formed(&phi).is_err());
    }

    #[test]
    fn set_and_family_names_must_not_overlap() {
        let phi = Formula::forall_family(var("u"), var("i"), v("X"), Formula::eq(v("u"), v("u")));
        assert!(well_formed(&phi).is_err());
        let psi = Formula::forall(var("u"), Formula::forall_family(var("u"), var("i"), v("X"), Formula::eq(v("y"), v("y"))));
        assert!(well_formed(&psi).is_err());
    }

    #[test]
    fn free_vars_examples() {
        assert!(free_vars(&fam_axiom()).is_empty());
        assert_eq!(free_vars(&Formula::eq(v("y"), v("y"))), [var("y")].into());
    }

    #[test]
    fn subst_examples() {
        let phi = Formula::eq(v("X"), v("X"));
        let lit = Term::Lit(HfSet::empty());
        assert_eq!(subst_set_var(&phi, &var("X"), &lit), Formula::eq(lit.clone(), lit));

        let phi = Formula::forall(var("y"), Formula::eq(v("y"), v("X")));
        assert_eq!(
            subst_set_var(&phi, &var("X"), &v("y")),
            Formula::forall(var("y1"), Formula::eq(v("y1"), v("y")))
        );

        let pair = canonical([zermelo_numeral(0), zermelo_numeral(1)]);
        let el1 = subst_set_var(&fam_body(v("X")), &var("X"), &Term::Lit(pair.clone()));
        assert_eq!(el1, fam_body(Term::Lit(pair)));
    }

    #[test]
    fn subst_renames_capturing_family() {
        // Substituting the set variable u into a family u's scope renames the family.
        let phi = Formula::forall_family(var("u"), var("i"), Term::Lit(HfSet::numeral(1)), Formula::eq(v("x"), Term::app("u", Index::Var(var("i")))));
        let out = subst_set_var(&phi, &var("x"), &v("u"));
        assert_eq!(well_formed(&out), Ok(()));
        match out {
            Formula::ForallFamily { family, .. } => assert_eq!(family, var("u1")),
            other => panic!("unexpected {other:?}"),
        }
    }

    fn pair_body(parts: Formula) -> Formula {
        Formula::exists(var("Z"), Formula::forall(var("y"), Formula::iff(Formula::mem(v("y"), v("Z")), parts)))
    }

    #[test]
    fn subst_family_pair() {
        let labels = canonical([zermelo_numeral(0), zermelo_numeral(1)]);
        let phi = fam_body(Term::Lit(labels));
        let assignment: FamilyAssignment = [(zermelo_numeral(0), v("a")), (zermelo_numeral(1), v("b"))].into();
        let out = subst_family(&phi, &var("u"), &assignment).unwrap();
        let expected = pair_body(Formula::or(Formula::eq(v("y"), v("a")), Formula::eq(v("y"), v("b"))));
        assert_eq!(out, expected);
    }

    #[test]
    fn subst_family_empty_and_singleton() {
        let phi = fam_body(Term::Lit(HfSet::empty()));
        let out = subst_family(&phi, &var("u"), &FamilyAssignment::new()).unwrap();
        assert_eq!(out, pair_body(Formula::not(Formula::eq(v("y"), v("y")))));

        let phi = fam_body(Term::Lit(HfSet::numeral(1)));
        let assignment: FamilyAssignment = [(HfSet::empty(), v("a"))].into();
        let out = subst_family(&phi, &var("u"), &assignment).unwrap();
        assert_eq!(out, pair_body(Formula::eq(v("y"), v("a"))));
    }

    #[test]
    fn subst_family_errors() {
        let labels = canonical([zermelo_numeral(0), zermelo_numeral(1)]);
        let phi = fam_body(Term::Lit(labels));
        let partial: FamilyAssignment = [(zermelo_numeral(0), v("a"))].into();
        assert!(matches!(
            subst_family(&phi, &var("u"), &partial),
            Err(SubstError::DomainMismatch { .. })
        ));
        assert_eq!(
            subst_family(&fam_body(v("X")), &var("u"), &partial),
            Err(SubstError::NotLiteral)
        );
    }

    #[test]
    fn subst_family_avoids_capture() {
        // Assigning the set variable y must not be captured by `A y`.
        let phi = fam_body(Term::Lit(HfSet::numeral(1)));
        let assignment: FamilyAssignment = [(HfSet::empty(), v("y"))].into();
        let out = subst_family(&phi, &var("u"), &assignment).unwrap();
        let expected = pair_body(Formula::eq(v("y"), v("y")));
        assert!(!alpha_eq(&out, &expected));
        assert_eq!(free_vars(&out), [var("y")].into());
    }

    #[test]
    fn alpha_examples() {
        let a = Formula::forall(var("x"), Formula::eq(v("x"), v("x")));
        let b = Formula::forall(var("y"), Formula::eq(v("y"), v("y")));
        let c = Formula::exists(var("x"), Formula::eq(v("x"), v("x")));
        assert!(alpha_eq(&a, &b));
        assert!(!alpha_eq(&a, &c));
        let renamed = Formula::forall(var("X"), rename_family_binder(&fam_body(v("X")), "v"));
        assert!(alpha_eq(&fam_axiom(), &renamed));
        assert_eq!(alpha_normalize(&fam_axiom()), alpha_normalize(&renamed));
    }

    fn rename_family_binder(phi: &Formula, to: &str) -> Formula {
        match phi {
            Formula::ForallFamily { family, index_var, index_set, body } => Formula::forall_family(
                var(to),
                index_var.clone(),
                index_set.clone(),
                rename_family(body, family, &var(to)),
            ),
            _ => unreachable!(),
        }
    }

    #[test]
    fn alpha_distinguishes_free_from_bound() {
        let a = Formula::forall(var("x"), Formula::eq(v("x"), v("y")));
        let b = Formula::forall(var("y"), Formula::eq(v("y"), v("y")));
        assert!(!alpha_eq(&a, &b));
        assert_ne!(alpha_normalize(&a), alpha_normalize(&b));
    }

    #[test]
    fn reserved_names() {
        assert!(VarName::new("fam").is_err());
        assert!(VarName::new("1x").is_err());
        assert!(VarName::new("x-y").is_err());
        assert!(VarName::new("x_1").is_ok());
    }
}
