//! Elimination of family binders and index quantifiers over literal index
//! sets.
//!
//! `fam u[i] in {c0, .., cn-1} . B` becomes `A u0 . .. A un-1 . B'` where `B'`
//! replaces `u[ck]` by `uk` and turns each index quantifier through which `u`
//! is applied into an n-fold disjunction or conjunction.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::ast::{
    falsum, family_scope_body, fresh_name, instantiate, subst_index, verum, FamilyAssignment, Formula, Position,
    SubstError, Term, VarName,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExpandError {
    #[error("index set at {0} is not a literal")]
    NotLiteral(Position),
    #[error(transparent)]
    Subst(#[from] SubstError),
}

impl ExpandError {
    pub fn code(&self) -> &'static str {
        match self {
            ExpandError::NotLiteral(_) => "NOT_LITERAL",
            ExpandError::Subst(_) => "BAD_EXPAND",
        }
    }
}

/// Position of the first index set (in pre-order) that is not a literal.
pub fn first_non_literal(phi: &Formula) -> Option<Position> {
    fn go(phi: &Formula, at: Position) -> Option<Position> {
        match phi {
            Formula::Mem(..) | Formula::Eq(..) => None,
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => go(a, at.child(0)),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                go(a, at.child(0)).or_else(|| go(b, at.child(1)))
            }
            Formula::ForallFamily { index_set, body, .. }
            | Formula::ExistsIndex { index_set, body, .. }
            | Formula::ForallIndex { index_set, body, .. } => {
                if matches!(index_set, Term::Lit(_)) {
                    go(body, at.child(1))
                } else {
                    Some(at.child(0))
                }
            }
        }
    }
    go(phi, Position::default())
}

/// Rewrites `phi` into an equivalent formula without family binders or index
/// quantifiers. Every index set must be a literal.
pub fn expand_finite_family(phi: &Formula) -> Result<Formula, ExpandError> {
    if let Some(p) = first_non_literal(phi) {
        return Err(ExpandError::NotLiteral(p));
    }
    let mut used = phi.all_names();
    expand(phi, &mut used)
}

fn expand(phi: &Formula, used: &mut BTreeSet<VarName>) -> Result<Formula, ExpandError> {
    Ok(match phi {
        Formula::Mem(..) | Formula::Eq(..) => phi.clone(),
        Formula::Not(a) => Formula::not(expand(a, used)?),
        Formula::And(a, b) => Formula::and(expand(a, used)?, expand(b, used)?),
        Formula::Or(a, b) => Formula::or(expand(a, used)?, expand(b, used)?),
        Formula::Implies(a, b) => Formula::implies(expand(a, used)?, expand(b, used)?),
        Formula::Iff(a, b) => Formula::iff(expand(a, used)?, expand(b, used)?),
        Formula::Forall(x, a) => Formula::forall(x.clone(), expand(a, used)?),
        Formula::Exists(x, a) => Formula::exists(x.clone(), expand(a, used)?),
        Formula::ForallFamily { family, index_var, index_set, body } => {
            let Term::Lit(labels) = index_set else {
                unreachable!("checked by first_non_literal")
            };
            let mut names = Vec::with_capacity(labels.len());
            let mut assignment = FamilyAssignment::new();
            for (k, c) in labels.elements().iter().enumerate() {
                let candidate = VarName::raw(format!("{family}{k}"));
                let name = if used.contains(&candidate) { fresh_name(&candidate, used) } else { candidate };
                used.insert(name.clone());
                assignment.insert(c.clone(), Term::Var(name.clone()));
                names.push(name);
            }
            let scoped = family_scope_body(index_var, index_set, body);
            let inst = instantiate(&scoped, family, labels, &assignment, used)?;
            let inner = expand(&inst, used)?;
            names.into_iter().rev().fold(inner, |acc, u| Formula::forall(u, acc))
        }
        Formula::ExistsIndex { index_var, index_set, body } | Formula::ForallIndex { index_var, index_set, body } => {
            let Term::Lit(labels) = index_set else {
                unreachable!("checked by first_non_literal")
            };
            let existential = matches!(phi, Formula::ExistsIndex { .. });
            let parts = labels
                .elements()
                .iter()
                .map(|c| expand(&subst_index(body, index_var, c), used))
                .collect::<Result<Vec<_>, _>>()?;
            let joined = if existential { Formula::disj(parts) } else { Formula::conj(parts) };
            match joined {
                Some(f) => f,
                None if existential => falsum(body, used),
                None => verum(body, used),
            }
        }
    })
}

/// Rewrites each index quantifier over a literal into the finite disjunction
/// or conjunction of its instances. Family binders and index quantifiers over
/// set variables are kept.
pub fn expand_index_quantifiers(phi: &Formula) -> Formula {
    let used = phi.all_names();
    expand_iq(phi, &used)
}

fn expand_iq(phi: &Formula, used: &BTreeSet<VarName>) -> Formula {
    let rec = |a: &Formula| expand_iq(a, used);
    match phi {
        Formula::Mem(..) | Formula::Eq(..) => phi.clone(),
        Formula::Not(a) => Formula::not(rec(a)),
        Formula::And(a, b) => Formula::and(rec(a), rec(b)),
        Formula::Or(a, b) => Formula::or(rec(a), rec(b)),
        Formula::Implies(a, b) => Formula::implies(rec(a), rec(b)),
        Formula::Iff(a, b) => Formula::iff(rec(a), rec(b)),
        Formula::Forall(x, a) => Formula::forall(x.clone(), rec(a)),
        Formula::Exists(x, a) => Formula::exists(x.clone(), rec(a)),
        Formula::ForallFamily { family, index_var, index_set, body } => {
            Formula::forall_family(family.clone(), index_var.clone(), index_set.clone(), rec(body))
        }
        Formula::ExistsIndex { index_var, index_set, body } | Formula::ForallIndex { index_var, index_set, body } => {
            let existential = matches!(phi, Formula::ExistsIndex { .. });
            let Term::Lit(labels) = index_set else {
                return if existential {
                    Formula::exists_index(index_var.clone(), index_set.clone(), rec(body))
                } else {
                    Formula::forall_index(index_var.clone(), index_set.clone(), rec(body))
                };
            };
            let parts: Vec<Formula> = labels.elements().iter().map(|c| rec(&subst_index(body, index_var, c))).collect();
            let joined = if existential { Formula::disj(parts) } else { Formula::conj(parts) };
            joined.unwrap_or_else(|| if existential { falsum(body, used) } else { verum(body, used) })
        }
    }
}
