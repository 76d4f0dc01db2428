mod common;

use common::oracle::{self, Universe, MAIN_PARAMS, SUB_PARAMS};
use common::check_golden;
use fast_core::ast::var;
use fast_core::axioms::{axiom_formula, main_instance, sub_instance, AxiomName};
use fast_core::parser::parse_formula;
use fast_core::semantics::{check_axioms_with, EvalOptions, Evaluator, Model};

const BIG: EvalOptions = EvalOptions { budget: 2_000_000_000 };

fn oracle_axioms(k: usize) -> String {
    let u = Universe::new(k);
    oracle::AXIOMS.iter().map(|(name, f)| format!("{name} {}\n", f(&u))).collect()
}

fn evaluator_axioms(k: usize) -> String {
    let m = Model::vrank(k).unwrap();
    let got = check_axioms_with(&m, BIG).unwrap();
    AxiomName::ALL.iter().map(|a| format!("{} {}\n", a.as_str(), got[a])).collect()
}

fn scheme_lines(params: &[(&str, oracle::Relation)], ranks: &[usize], value: impl Fn(usize, usize) -> bool) -> String {
    let mut out = String::new();
    for &k in ranks {
        for (n, (src, _)) in params.iter().enumerate() {
            out += &format!("V{k} {src} : {}\n", value(k, n));
        }
    }
    out
}

fn evaluate_scheme(instance: fast_core::ast::Formula, k: usize) -> bool {
    let m = Model::vrank(k).unwrap();
    Evaluator::with_options(&m, BIG).holds(&instance).unwrap()
}

#[test]
fn axioms_in_v4() {
    let expected = oracle_axioms(4);
    check_golden("axioms_v4.golden", &expected);
    assert_eq!(evaluator_axioms(4), expected);
}

#[test]
fn axioms_in_small_ranks_agree_with_oracle() {
    for k in 0..=3 {
        assert_eq!(evaluator_axioms(k), oracle_axioms(k), "V_{k}");
    }
}

const MAIN_RANKS: [usize; 3] = [2, 3, 4];

#[test]
fn main_instances() {
    let expected = scheme_lines(&MAIN_PARAMS, &MAIN_RANKS, |k, n| oracle::main_instance(&Universe::new(k), MAIN_PARAMS[n].1));
    check_golden("main_instances.golden", &expected);
    let actual = scheme_lines(&MAIN_PARAMS, &MAIN_RANKS, |k, n| {
        let phi = parse_formula(MAIN_PARAMS[n].0).unwrap();
        evaluate_scheme(main_instance(&phi, &var("x"), &var("y")).unwrap(), k)
    });
    assert_eq!(actual, expected);
}

#[test]
fn sub_instances_agree_with_oracle() {
    for k in [2, 3, 4] {
        let u = Universe::new(k);
        for (src, rel) in SUB_PARAMS {
            let phi = parse_formula(src).unwrap();
            let inst = sub_instance(&phi, &var("x"), &var("y")).unwrap();
            assert_eq!(evaluate_scheme(inst, k), oracle::sub_instance(&u, rel), "V_{k}: {src}");
        }
    }
}

#[test]
fn no_universal_set_agrees_with_oracle() {
    for k in 0..=3 {
        let m = Model::vrank(k).unwrap();
        let f = fast_core::axioms::no_universal_set();
        assert_eq!(Evaluator::with_options(&m, BIG).holds(&f).unwrap(), oracle::no_universal_set(&Universe::new(k)), "V_{k}");
    }
}

#[test]
fn axiom_texts_parse_back() {
    for a in AxiomName::ALL {
        let f = axiom_formula(a);
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f, "{}", a.as_str());
    }
}
