mod common;

use proptest::prelude::*;

use fast_core::ast::{alpha_eq, alpha_normalize, free_vars, var, well_formed, Formula, Term};
use fast_core::expander::expand_finite_family;
use fast_core::gen::{FormulaGen, GenConfig};
use fast_core::parser::parse_formula;
use fast_core::semantics::{Env, EvalError, Evaluator, Model};

fn literal_config() -> GenConfig {
    GenConfig { max_depth: 3, var_index_sets: false, ..GenConfig::default() }
}

fn value(m: &Model, phi: &Formula) -> Result<bool, EvalError> {
    let env = Env::new().with(var("a"), 1 % m.size()).with(var("b"), 0);
    Evaluator::new(m).eval(&env, phi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_parse_round_trip(seed in any::<u64>()) {
        let phi = FormulaGen::new(seed, GenConfig::default()).formula();
        prop_assert_eq!(parse_formula(&phi.to_string()).unwrap(), phi);
    }

    #[test]
    fn alpha_normal_form_is_stable(seed in any::<u64>()) {
        let phi = FormulaGen::new(seed, GenConfig::default()).formula();
        let norm = alpha_normalize(&phi);
        prop_assert!(alpha_eq(&phi, &norm));
        prop_assert_eq!(alpha_normalize(&norm), norm.clone());
        prop_assert_eq!(free_vars(&norm), free_vars(&phi));
        prop_assert!(well_formed(&norm).is_ok());
    }

    #[test]
    fn renaming_a_bound_variable_is_invisible(seed in any::<u64>(), k in 1usize..=3) {
        let body = FormulaGen::new(seed, GenConfig::first_order()).formula_with_depth(3);
        let renamed_body = fast_core::ast::subst_set_var(&body, &var("x"), &Term::var("x9"));
        let phi = Formula::forall(var("x"), body);
        let psi = Formula::forall(var("x9"), renamed_body);
        prop_assert!(alpha_eq(&phi, &psi));
        let m = Model::vrank(k).unwrap();
        prop_assert_eq!(value(&m, &phi), value(&m, &psi));
    }

    #[test]
    fn expansion_is_idempotent_and_family_free(seed in any::<u64>()) {
        let phi = FormulaGen::new(seed, literal_config()).formula();
        let once = expand_finite_family(&phi);
        prop_assume!(once.is_ok());
        let once = once.unwrap();
        prop_assert!(!once.has_family_syntax());
        prop_assert_eq!(expand_finite_family(&once).unwrap(), once);
    }

    #[test]
    fn expansion_preserves_value(seed in any::<u64>(), k in 1usize..=2) {
        let mut g = FormulaGen::new(seed, literal_config());
        let l = g.index_literal();
        let phi = g.family_binder(Term::Lit(l), 2);
        let expanded = expand_finite_family(&phi);
        prop_assume!(expanded.is_ok());
        let m = Model::vrank(k).unwrap();
        match (value(&m, &phi), value(&m, &expanded.unwrap())) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            // Expansion may discard an ill-defined subformula, never add one.
            (Err(_), _) => {}
            (a, b) => prop_assert!(false, "{phi}: {a:?} vs {b:?}"),
        }
    }

    #[test]
    fn vacuous_family_binder(seed in any::<u64>(), k in 1usize..=3) {
        let mut g = FormulaGen::new(seed, GenConfig::first_order());
        let body = g.formula_with_depth(3);
        let l = g.index_literal();
        let phi = Formula::forall_family(var("u"), var("i"), Term::Lit(l), body.clone());
        let m = Model::vrank(k).unwrap();
        prop_assert_eq!(value(&m, &phi), value(&m, &body));
    }
}

#[test]
fn corpus_round_trips_and_expands() {
    for (name, phi) in common::corpus() {
        assert_eq!(parse_formula(&phi.to_string()).unwrap(), phi, "{name}");
        let e = expand_finite_family(&phi).unwrap();
        assert!(!e.has_family_syntax(), "{name}");
        assert_eq!(parse_formula(&e.to_string()).unwrap(), e, "{name}");
    }
}
