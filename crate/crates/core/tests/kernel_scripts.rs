mod common;

use common::read_fixture;
use fast_core::axioms::{axiom_formula, AxiomName};
use fast_core::kernel::{check_proof, Justification, ProofScript, Reason, Verdict};
use fast_core::parser::parse_formula;
use fast_core::semantics::{Evaluator, Model};

fn script(rel: &str) -> ProofScript {
    ProofScript::parse(&read_fixture(rel)).unwrap()
}

fn rejected(v: Verdict) -> (usize, Reason) {
    match v {
        Verdict::Rejected(r) => (r.line, r.reason),
        Verdict::Accepted => panic!("accepted"),
    }
}

#[test]
fn accepted_scripts() {
    for rel in ["proofs/pair.fastproof", "proofs/singleton.fastproof", "proofs/pair_expanded.fastproof"] {
        assert_eq!(check_proof(&script(rel)), Verdict::Accepted, "{rel}");
    }
}

#[test]
fn mutants_are_rejected_with_codes() {
    assert_eq!(rejected(check_proof(&script("proofs/pair_wrong_index.fastproof"))), (2, Reason::BadIndexSet));
    assert_eq!(rejected(check_proof(&script("proofs/pair_incomplete_assignment.fastproof"))), (3, Reason::AssignmentDomain));
    assert_eq!(rejected(check_proof(&script("proofs/pair_wrong_taut.fastproof"))), (4, Reason::NotTaut));
}

#[test]
fn scripts_print_and_reparse() {
    for rel in ["proofs/pair.fastproof", "proofs/pair_expanded.fastproof"] {
        let s = script(rel);
        assert_eq!(ProofScript::parse(&s.to_string()).unwrap(), s, "{rel}");
    }
}

/// Wherever a theorem fails, some axiom it cites must fail too, provided
/// every literal instantiated by `el1` names an element of the model.
#[test]
fn failing_theorems_have_failing_axioms() {
    let fam = axiom_formula(AxiomName::Fam);
    for rel in ["proofs/pair.fastproof", "proofs/singleton.fastproof", "proofs/pair_expanded.fastproof"] {
        let s = script(rel);
        let last = &s.lines.last().unwrap().formula;
        for k in 0..=3 {
            let m = Model::vrank(k).unwrap();
            let denotes = s.lines.iter().all(|l| match &l.justification {
                Justification::El1 { index_set, .. } => m.denote(index_set).is_ok(),
                _ => true,
            });
            if !denotes {
                continue;
            }
            let theorem = Evaluator::new(&m).holds(last).unwrap();
            let axiom = Evaluator::new(&m).holds(&fam).unwrap();
            assert!(theorem || !axiom, "{rel} in V_{k}");
        }
    }
    // In V_1 the literal {0, 1} names nothing: FAM holds while pairing fails.
    let v1 = Model::vrank(1).unwrap();
    assert_eq!(Evaluator::new(&v1).holds(&fam), Ok(true));
    assert_eq!(Evaluator::new(&v1).holds(&script("proofs/pair.fastproof").goal), Ok(false));
}

#[test]
fn appending_a_valid_line_keeps_acceptance() {
    let src = read_fixture("proofs/pair.fastproof");
    let body: String = src.lines().filter(|l| !l.starts_with("qed")).map(|l| format!("{l}\n")).collect();
    let extended = format!("{body}7 A a . A b . E Z . A y . (y in Z <-> y = a \\/ y = b) ; taut 6\nqed 7\n");
    assert_eq!(check_proof(&ProofScript::parse(&extended).unwrap()), Verdict::Accepted);
}

#[test]
fn forward_citation_is_rejected() {
    let src = "1 E x . x = x ; mp 1 2\nqed 1\n";
    let (line, reason) = rejected(check_proof(&ProofScript::parse(src).unwrap()));
    assert_eq!(line, 1);
    assert_eq!(reason, Reason::BadCitation);
}

#[test]
fn wrong_axiom_text_is_rejected() {
    let phi = parse_formula("E x . A y . ~ y in x").unwrap();
    let src = format!("1 {phi} ; axiom EXT\nqed 1\n");
    assert_eq!(rejected(check_proof(&ProofScript::parse(&src).unwrap())), (1, Reason::BadAxiom));
}
