mod common;

use common::model_fixture;
use fast_core::ast::var;
use fast_core::axioms::{axiom_formula, no_universal_set, AxiomName};
use fast_core::parser::parse_formula;
use fast_core::semantics::{check_axioms, eval_formula, find_countermodel, Env, EvalError, EvalOptions, Evaluator, Model};

fn fam_at(literal: &str) -> fast_core::ast::Formula {
    parse_formula(&format!("fam u[i] in {literal} . E Z . A y . (y in Z <-> E i in {literal} . y = u[i])")).unwrap()
}

#[test]
fn pair_instance_fails_at_the_top_rank() {
    let v4 = Model::vrank(4).unwrap();
    assert_eq!(Evaluator::new(&v4).holds(&fam_at("{0, 1}")), Ok(false));
    let v1 = Model::vrank(1).unwrap();
    assert_eq!(Evaluator::new(&v1).holds(&fam_at("{}")), Ok(true));
}

#[test]
fn quine_breaks_empty_and_regularity() {
    let got = check_axioms(&model_fixture("models/quine.model")).unwrap();
    assert!(!got[&AxiomName::Empty]);
    assert!(!got[&AxiomName::Reg]);
    assert!(got[&AxiomName::Ext]);
}

#[test]
fn two_empty_nodes_break_extensionality() {
    let got = check_axioms(&model_fixture("models/two_empty.model")).unwrap();
    assert!(!got[&AxiomName::Ext]);
    assert!(got[&AxiomName::Empty]);
}

#[test]
fn no_universal_set_in_v3() {
    let v3 = model_fixture("models/v3.model");
    assert_eq!(Evaluator::new(&v3).holds(&no_universal_set()), Ok(true));
}

#[test]
fn v3_fixture_is_v3() {
    let m = model_fixture("models/v3.model");
    assert_eq!(m.size(), 4);
    assert_eq!(check_axioms(&m).unwrap(), check_axioms(&Model::vrank(3).unwrap()).unwrap());
}

#[test]
fn universal_element_in_quine() {
    let q = model_fixture("models/quine.model");
    let env = Env::new().with(var("q"), q.element("q").unwrap());
    assert_eq!(eval_formula(&q, &env, &parse_formula("A y . y in q").unwrap()), Ok(true));
}

#[test]
fn regularity_countermodel_is_the_quine() {
    let m = find_countermodel(&axiom_formula(AxiomName::Reg), 1).unwrap().unwrap();
    assert_eq!(m.size(), 1);
    assert!(m.is_member(0, 0));
    assert!(find_countermodel(&axiom_formula(AxiomName::Ext), 1).unwrap().is_none());
}

#[test]
fn infinity_fails_in_every_rank() {
    let inf = axiom_formula(AxiomName::Inf);
    for k in 0..=4 {
        assert_eq!(Evaluator::new(&Model::vrank(k).unwrap()).holds(&inf), Ok(false), "V_{k}");
    }
}

#[test]
fn budget_is_enforced() {
    let v4 = Model::vrank(4).unwrap();
    let mut ev = Evaluator::with_options(&v4, EvalOptions { budget: 100 });
    assert_eq!(ev.holds(&axiom_formula(AxiomName::Fam)), Err(EvalError::BudgetExceeded(100)));
}
