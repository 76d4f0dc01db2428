//! Randomized local soundness checks for the kernel rules.
//!
//! Each trial builds a random instance of a rule that the kernel accepts,
//! samples a small model, and evaluates premises and conclusion as validities
//! (true under every assignment of their free variables). A violation is a
//! trial where all premises are valid and the conclusion is not.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::ast::{alpha_normalize, subst_family, subst_set_var, var, FamilyAssignment, Formula, Term};
use crate::axioms::{axiom_formula, AxiomName};
use crate::expander::{expand_finite_family, expand_index_quantifiers};
use crate::gen::{FormulaGen, GenConfig};
use crate::hf::HfSet;
use crate::kernel::{check_step, Justification, Rule};
use crate::parser::parse_formula;
use crate::semantics::{EvalError, EvalOptions, Evaluator, Model};

/// Seed used by [`rule_local_soundness`].
pub const DEFAULT_SEED: u64 = 0x5EED_FA57;

/// Budget per single evaluation inside a trial.
const TRIAL_BUDGET: u64 = 2_000_000;

/// The pair instance of the family axiom with index set `{0, 1}`.
pub const PAIR_INSTANCE: &str = "fam u[j] in {0, 1} . E Z . A y . (y in Z <-> E j in {0, 1} . y = u[j])";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub model: String,
    pub premises: Vec<String>,
    pub conclusion: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoundnessReport {
    pub rule: Rule,
    /// Trials whose premises were all valid in the sampled model.
    pub checked: usize,
    /// Trials attempted in total.
    pub attempts: usize,
    /// Trials skipped because a literal had no denotation or the budget ran out.
    pub skipped: usize,
    pub violations: Vec<Violation>,
}

impl fmt::Display for SoundnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} checked, {} attempts, {} skipped, {} violations",
            self.rule,
            self.checked,
            self.attempts,
            self.skipped,
            self.violations.len()
        )
    }
}

/// Runs trials until `trials` instances had valid premises (or a generous
/// attempt cap is hit). Models are `V_0..V_max` and digraphs with at most
/// `max_universe` nodes.
pub fn rule_local_soundness(rule: Rule, trials: usize, max_universe: usize) -> SoundnessReport {
    rule_local_soundness_seeded(rule, trials, max_universe, DEFAULT_SEED)
}

pub fn rule_local_soundness_seeded(rule: Rule, trials: usize, max_universe: usize, seed: u64) -> SoundnessReport {
    let mut g = FormulaGen::new(seed ^ (rule as u64).wrapping_mul(0x9E37_79B9), config_for(rule));
    let mut report = SoundnessReport { rule, checked: 0, attempts: 0, skipped: 0, violations: Vec::new() };
    let max_attempts = trials.saturating_mul(200).max(1000);
    while report.checked < trials && report.attempts < max_attempts {
        report.attempts += 1;
        let inst = if rule == Rule::Expand && report.attempts % 10 == 1 {
            expand_instance(parse_formula(PAIR_INSTANCE).expect("pair instance parses"), true)
        } else {
            instance(rule, &mut g)
        };
        let Some(inst) = inst else { continue };
        let model = g.model(max_universe.min(3), max_universe);
        match trial(&model, &inst) {
            Ok(None) => {}
            Ok(Some(true)) => report.checked += 1,
            Ok(Some(false)) => {
                report.checked += 1;
                report.violations.push(Violation {
                    model: model.to_spec(),
                    premises: inst.premises.iter().map(|p| p.to_string()).collect(),
                    conclusion: inst.conclusion.to_string(),
                });
            }
            Err(_) => report.skipped += 1,
        }
    }
    report
}

/// `None` when some premise is not valid; otherwise whether the conclusion is.
fn trial(model: &Model, inst: &Instance) -> Result<Option<bool>, EvalError> {
    // EL1 instantiates a variable ranging over the carrier; the literal must
    // name an element for the instance to be an instance at all.
    if let Justification::El1 { index_set, .. } = &inst.justification {
        model.denote(index_set)?;
    }
    let mut ev = Evaluator::with_options(model, EvalOptions { budget: TRIAL_BUDGET });
    for p in &inst.premises {
        ev.stats = Default::default();
        if !ev.holds(p)? {
            return Ok(None);
        }
    }
    ev.stats = Default::default();
    ev.holds(&inst.conclusion).map(Some)
}

fn config_for(rule: Rule) -> GenConfig {
    let base = GenConfig { max_depth: 3, ..GenConfig::default() };
    match rule {
        Rule::Mp | Rule::Taut | Rule::Ug => GenConfig { families: false, ..base },
        Rule::Ui => GenConfig { free_vars: vec![var("a"), var("w")], families: false, ..base },
        Rule::El1 => GenConfig { free_vars: vec![var("a"), var("X")], literals: false, ..base },
        Rule::El2 => GenConfig { var_index_sets: false, ..base },
        Rule::Expand => GenConfig { var_index_sets: false, ..base },
        Rule::Axiom => base,
    }
}

fn accepted(inst: Instance) -> Option<Instance> {
    let cited: Vec<&Formula> = inst.premises.iter().collect();
    check_step(&inst.justification, &cited, &inst.conclusion).ok().map(|_| inst)
}

/// A random kernel-accepted instance of `rule`.
pub fn instance(rule: Rule, g: &mut FormulaGen) -> Option<Instance> {
    match rule {
        Rule::Axiom => {
            let name = *AxiomName::ALL.choose(g.rng()).expect("nonempty");
            let ax = axiom_formula(name);
            accepted(Instance {
                conclusion: alpha_normalize(&ax),
                premises: vec![ax],
                justification: Justification::Axiom(name),
            })
        }
        Rule::Mp => {
            let a = g.formula_with_depth(2);
            let c = g.formula_with_depth(2);
            let b = match g.rng().gen_range(0..5) {
                0 => Formula::or(a.clone(), c),
                1 => Formula::implies(c, a.clone()),
                2 => a.clone(),
                3 => Formula::not(Formula::not(a.clone())),
                _ => c,
            };
            accepted(Instance {
                premises: vec![Formula::implies(a.clone(), b.clone()), a],
                conclusion: b,
                justification: Justification::Mp { major: 1, minor: 2 },
            })
        }
        Rule::Taut => {
            let n = g.rng().gen_range(0..=2);
            let ps: Vec<Formula> = (0..n).map(|_| g.formula_with_depth(2)).collect();
            let c = g.formula_with_depth(2);
            let p0 = ps.first().cloned().unwrap_or_else(|| c.clone());
            let p1 = ps.last().cloned().unwrap_or_else(|| c.clone());
            let conclusion = match g.rng().gen_range(0..6) {
                0 => Formula::or(p0, c),
                1 => Formula::implies(c, p0),
                2 => Formula::and(p0, p1),
                3 => Formula::not(Formula::not(p1)),
                4 => Formula::or(c.clone(), Formula::not(c)),
                _ => Formula::implies(Formula::implies(p0, c.clone()), Formula::or(c, Formula::not(p1))),
            };
            accepted(Instance {
                justification: Justification::Taut((1..=ps.len()).collect()),
                premises: ps,
                conclusion,
            })
        }
        Rule::Ui => {
            let w = var("w");
            let body = g.formula_with_depth(3);
            let witness = match g.rng().gen_range(0..4) {
                0 => Term::Lit(g.small_set()),
                1 => Term::var("a"),
                2 => Term::var("x"),
                _ => Term::var("y"),
            };
            let premise = Formula::forall(w.clone(), body.clone());
            accepted(Instance {
                conclusion: subst_set_var(&body, &w, &witness),
                premises: vec![premise],
                justification: Justification::Ui { premise: 1, witness },
            })
        }
        Rule::Ug => {
            let body = g.formula_with_depth(3);
            let x = [var("a"), var("b"), var("x")].choose(g.rng()).cloned().expect("nonempty");
            accepted(Instance {
                conclusion: Formula::forall(x.clone(), body.clone()),
                premises: vec![body],
                justification: Justification::Ug { premise: 1, var: x },
            })
        }
        Rule::El1 => {
            let x = var("X");
            let fam = g.family_binder(Term::Var(x.clone()), 2);
            let l = g.index_literal();
            accepted(Instance {
                conclusion: subst_set_var(&fam, &x, &Term::Lit(l.clone())),
                premises: vec![Formula::forall(x, fam)],
                justification: Justification::El1 { premise: 1, index_set: l },
            })
        }
        Rule::El2 => {
            let l = g.index_literal();
            let fam = g.family_binder(Term::Lit(l.clone()), 2);
            let mut assignment = FamilyAssignment::new();
            for c in l.elements() {
                let t = match g.rng().gen_range(0..4) {
                    0 => Term::Lit(g.small_set()),
                    1 => Term::var("x"),
                    2 => Term::var("b"),
                    _ => Term::var("a"),
                };
                assignment.insert(c.clone(), t);
            }
            let conclusion = subst_family(&fam, &var("u"), &assignment).ok()?;
            accepted(Instance {
                conclusion,
                premises: vec![fam],
                justification: Justification::El2 { premise: 1, assignment },
            })
        }
        Rule::Expand => {
            let phi = if g.rng().gen_bool(0.5) {
                let l: HfSet = g.index_literal();
                g.family_binder(Term::Lit(l), 2)
            } else {
                g.formula_with_depth(3)
            };
            let full = g.rng().gen_bool(0.7);
            expand_instance(phi, full)
        }
    }
}

fn expand_instance(phi: Formula, full: bool) -> Option<Instance> {
    let conclusion = if full { expand_finite_family(&phi).ok()? } else { expand_index_quantifiers(&phi) };
    accepted(Instance { conclusion, premises: vec![phi], justification: Justification::Expand { premise: 1 } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_rule_produces_instances() {
        for rule in Rule::ALL {
            let mut g = FormulaGen::new(3, config_for(rule));
            let made = (0..50).filter(|_| instance(rule, &mut g).is_some()).count();
            assert!(made >= 25, "{rule}: {made}");
        }
    }

    #[test]
    fn small_runs_are_clean() {
        for rule in [Rule::Mp, Rule::El1, Rule::Expand] {
            let r = rule_local_soundness(rule, 20, 2);
            assert!(r.violations.is_empty(), "{r:?}");
            assert_eq!(r.checked, 20, "{r}");
        }
    }
}
