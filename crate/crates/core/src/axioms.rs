//! The eleven nonlogical axioms and the scheme-instance generators.
//!
//! All axioms are written relationally over `in` and `=`; there are no term
//! formers. Ordered two-tuples use the encoding `<x, y> = {x, {x, y}}` and
//! `f : x |-> y` means `<x, y> in f`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ast::{fresh_name, free_vars, subst_set_var, var, Formula, Term, VarName};
use crate::parser::parse_formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomName {
    Ext,
    Empty,
    Sum,
    Pow,
    Inf,
    Reg,
    Diff,
    Prod,
    Im,
    Rev,
    Fam,
}

impl AxiomName {
    pub const ALL: [AxiomName; 11] = [
        AxiomName::Ext,
        AxiomName::Empty,
        AxiomName::Sum,
        AxiomName::Pow,
        AxiomName::Inf,
        AxiomName::Reg,
        AxiomName::Diff,
        AxiomName::Prod,
        AxiomName::Im,
        AxiomName::Rev,
        AxiomName::Fam,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AxiomName::Ext => "EXT",
            AxiomName::Empty => "EMPTY",
            AxiomName::Sum => "SUM",
            AxiomName::Pow => "POW",
            AxiomName::Inf => "INF",
            AxiomName::Reg => "REG",
            AxiomName::Diff => "DIFF",
            AxiomName::Prod => "PROD",
            AxiomName::Im => "IM",
            AxiomName::Rev => "REV",
            AxiomName::Fam => "FAM",
        }
    }
}

impl fmt::Display for AxiomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown axiom `{0}`")]
pub struct UnknownAxiom(pub String);

impl FromStr for AxiomName {
    type Err = UnknownAxiom;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AxiomName::ALL
            .into_iter()
            .find(|a| a.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownAxiom(s.to_owned()))
    }
}

// ---------------------------------------------------------------------------
// Relational building blocks

fn tv(v: &VarName) -> Term {
    Term::Var(v.clone())
}

/// Picks `base` (or a suffixed variant) not in `avoid`, and reserves it.
fn pick(base: &str, avoid: &mut BTreeSet<VarName>) -> VarName {
    let b = var(base);
    let name = if avoid.contains(&b) { fresh_name(&b, avoid) } else { b };
    avoid.insert(name.clone());
    name
}

fn avoiding(names: &[&VarName], extra: &BTreeSet<VarName>) -> BTreeSet<VarName> {
    let mut s: BTreeSet<VarName> = names.iter().map(|v| (*v).clone()).collect();
    s.extend(extra.iter().cloned());
    s
}

/// `w = {a, {a, b}}`:
/// `A v . (v in w <-> v = a \/ A s . (s in v <-> s = a \/ s = b))`.
pub fn is_tuple(w: &VarName, a: &VarName, b: &VarName, avoid: &BTreeSet<VarName>) -> Formula {
    let mut avoid = avoiding(&[w, a, b], avoid);
    let v = pick("v", &mut avoid);
    let s = pick("s", &mut avoid);
    let pair = Formula::forall(
        s.clone(),
        Formula::iff(
            Formula::mem(tv(&s), tv(&v)),
            Formula::or(Formula::eq(tv(&s), tv(a)), Formula::eq(tv(&s), tv(b))),
        ),
    );
    Formula::forall(
        v.clone(),
        Formula::iff(Formula::mem(tv(&v), tv(w)), Formula::or(Formula::eq(tv(&v), tv(a)), pair)),
    )
}

/// `f : a |-> b`, i.e. `E p . (p in f /\ p = <a, b>)`.
pub fn maps_to(f: &VarName, a: &VarName, b: &VarName, avoid: &BTreeSet<VarName>) -> Formula {
    let mut avoid = avoiding(&[f, a, b], avoid);
    let p = pick("p", &mut avoid);
    Formula::exists(p.clone(), Formula::and(Formula::mem(tv(&p), tv(f)), is_tuple(&p, a, b, &avoid)))
}

/// `f` is a function on `dom`: every element of `f` is a two-tuple with first
/// component in `dom`, and every `x in dom` has exactly one `y` with `f : x |-> y`.
pub fn is_function_on(f: &VarName, dom: &VarName, avoid: &BTreeSet<VarName>) -> Formula {
    let mut avoid = avoiding(&[f, dom], avoid);
    let p = pick("p", &mut avoid);
    let x = pick("x", &mut avoid);
    let y = pick("y", &mut avoid);
    let y2 = pick("y2", &mut avoid);
    let only_tuples = Formula::forall(
        p.clone(),
        Formula::implies(
            Formula::mem(tv(&p), tv(f)),
            Formula::exists(
                x.clone(),
                Formula::and(
                    Formula::mem(tv(&x), tv(dom)),
                    Formula::exists(y.clone(), is_tuple(&p, &x, &y, &avoid)),
                ),
            ),
        ),
    );
    let total_single_valued = Formula::forall(
        x.clone(),
        Formula::implies(
            Formula::mem(tv(&x), tv(dom)),
            Formula::exists(
                y.clone(),
                Formula::and(
                    maps_to(f, &x, &y, &avoid),
                    Formula::forall(
                        y2.clone(),
                        Formula::implies(maps_to(f, &x, &y2, &avoid), Formula::eq(tv(&y2), tv(&y))),
                    ),
                ),
            ),
        ),
    );
    Formula::and(only_tuples, total_single_valued)
}

// ---------------------------------------------------------------------------
// Axioms

const EXT: &str = "A X . A Y . ((A z . (z in X <-> z in Y)) -> X = Y)";
const EMPTY: &str = "E X . A y . ~ y in X";
const SUM: &str = "A X . E Y . A z . (z in Y <-> E w . (w in X /\\ z in w))";
const POW: &str = "A X . E Y . A z . (z in Y <-> A w . (w in z -> w in X))";
const INF: &str = "E X . ((E e . (e in X /\\ A w . ~ w in e)) /\\ \
                   A x . (x in X -> E s . (s in X /\\ A w . (w in s <-> w = x))))";
const REG: &str = "A X . ((E w . w in X) -> E Y . (Y in X /\\ ~ E z . (z in Y /\\ z in X)))";
const DIFF: &str = "A X . A Y . E Z . A z . (z in Z <-> z in X /\\ ~ z in Y)";
const FAM: &str = "A X . fam u[i] in X . E Z . A y . (y in Z <-> E i in X . y = u[i])";
const NO_UNIVERSAL_SET: &str =
    "A X . fam u[i] in X . ~ E Z . ((A y . (y in Z <-> E i in X . y = u[i])) /\\ A y . y in Z)";

fn parsed(src: &str) -> Formula {
    parse_formula(src).unwrap_or_else(|e| panic!("built-in formula `{src}` does not parse: {e}"))
}

fn prod() -> Formula {
    let none = BTreeSet::new();
    let [x_set, y_set, z_set, w, x, y] = ["X", "Y", "Z", "w", "x", "y"].map(var);
    let tuple_witness = Formula::exists(
        x.clone(),
        Formula::and(
            Formula::mem(tv(&x), tv(&x_set)),
            Formula::exists(
                y.clone(),
                Formula::and(Formula::mem(tv(&y), tv(&y_set)), is_tuple(&w, &x, &y, &none)),
            ),
        ),
    );
    Formula::forall(
        x_set.clone(),
        Formula::forall(
            y_set,
            Formula::exists(
                z_set.clone(),
                Formula::forall(w.clone(), Formula::iff(Formula::mem(tv(&w), tv(&z_set)), tuple_witness)),
            ),
        ),
    )
}

fn image() -> Formula {
    let none = BTreeSet::new();
    let [x_set, f, z_set, y, x] = ["X", "f", "Z", "y", "x"].map(var);
    let witness = Formula::exists(
        x.clone(),
        Formula::and(Formula::mem(tv(&x), tv(&x_set)), maps_to(&f, &x, &y, &none)),
    );
    Formula::forall(
        x_set.clone(),
        Formula::forall(
            f.clone(),
            Formula::implies(
                is_function_on(&f, &x_set, &none),
                Formula::exists(
                    z_set.clone(),
                    Formula::forall(y.clone(), Formula::iff(Formula::mem(tv(&y), tv(&z_set)), witness)),
                ),
            ),
        ),
    )
}

fn reverse_image() -> Formula {
    let none = BTreeSet::new();
    let [x_set, f, y, z_set, x] = ["X", "f", "y", "Z", "x"].map(var);
    let member = Formula::and(Formula::mem(tv(&x), tv(&x_set)), maps_to(&f, &x, &y, &none));
    Formula::forall(
        x_set.clone(),
        Formula::forall(
            f.clone(),
            Formula::forall(
                y,
                Formula::implies(
                    is_function_on(&f, &x_set, &none),
                    Formula::exists(
                        z_set.clone(),
                        Formula::forall(x.clone(), Formula::iff(Formula::mem(tv(&x), tv(&z_set)), member)),
                    ),
                ),
            ),
        ),
    )
}

pub fn axiom_formula(name: AxiomName) -> Formula {
    match name {
        AxiomName::Ext => parsed(EXT),
        AxiomName::Empty => parsed(EMPTY),
        AxiomName::Sum => parsed(SUM),
        AxiomName::Pow => parsed(POW),
        AxiomName::Inf => parsed(INF),
        AxiomName::Reg => parsed(REG),
        AxiomName::Diff => parsed(DIFF),
        AxiomName::Prod => prod(),
        AxiomName::Im => image(),
        AxiomName::Rev => reverse_image(),
        AxiomName::Fam => parsed(FAM),
    }
}

/// No family of sets indexed in a set collects into a set containing everything.
pub fn no_universal_set() -> Formula {
    parsed(NO_UNIVERSAL_SET)
}

// ---------------------------------------------------------------------------
// Scheme instances

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("distinguished variable `{0}` is not free in the parameter formula")]
    NotFree(VarName),
    #[error("parameter formula must not contain family binders or index quantifiers")]
    HasFamilies,
    #[error("distinguished variables must be distinct")]
    SameVariable,
}

/// `must_be_free` is the distinguished output variable; the argument variable
/// of SUB and MAIN may be vacuous (constant functions).
fn check_param(phi: &Formula, must_be_free: &VarName, other: Option<&VarName>) -> Result<(), SchemeError> {
    if phi.has_family_syntax() {
        return Err(SchemeError::HasFamilies);
    }
    if !free_vars(phi).contains(must_be_free) {
        return Err(SchemeError::NotFree(must_be_free.clone()));
    }
    if other == Some(must_be_free) {
        return Err(SchemeError::SameVariable);
    }
    Ok(())
}

/// Universal closure over the parameters (free variables other than the
/// distinguished ones), outermost first in name order.
fn close_over(params: BTreeSet<VarName>, body: Formula) -> Formula {
    params.into_iter().rev().fold(body, |acc, p| Formula::forall(p, acc))
}

fn params_of(phi: &Formula, distinguished: &[&VarName]) -> BTreeSet<VarName> {
    let mut fv = free_vars(phi);
    for d in distinguished {
        fv.remove(*d);
    }
    fv
}

/// `A X . E Y . A z . (z in Y <-> z in X /\ phi(z))`.
pub fn sep_instance(phi: &Formula, z: &VarName) -> Result<Formula, SchemeError> {
    check_param(phi, z, None)?;
    let mut avoid = phi.all_names();
    avoid.insert(z.clone());
    let x_set = pick("X", &mut avoid);
    let y_set = pick("Y", &mut avoid);
    let body = Formula::forall(
        x_set.clone(),
        Formula::exists(
            y_set.clone(),
            Formula::forall(
                z.clone(),
                Formula::iff(
                    Formula::mem(tv(z), tv(&y_set)),
                    Formula::and(Formula::mem(tv(z), tv(&x_set)), phi.clone()),
                ),
            ),
        ),
    );
    Ok(close_over(params_of(phi, &[z]), body))
}

/// `A x . (x in X -> E! y . phi(x, y))` with `E!` spelled out as existence plus
/// uniqueness.
fn functional_premise(phi: &Formula, x: &VarName, y: &VarName, x_set: &VarName, avoid: &mut BTreeSet<VarName>) -> Formula {
    let y2 = pick(&format!("{y}"), avoid);
    let unique = Formula::forall(
        y2.clone(),
        Formula::implies(subst_set_var(phi, y, &tv(&y2)), Formula::eq(tv(&y2), tv(y))),
    );
    Formula::forall(
        x.clone(),
        Formula::implies(
            Formula::mem(tv(x), tv(x_set)),
            Formula::exists(y.clone(), Formula::and(phi.clone(), unique)),
        ),
    )
}

/// `A X . ((A x . (x in X -> E! y . phi(x, y))) -> E Z . A u . (u in Z <-> E v . (v in X /\ phi(v, u))))`.
pub fn sub_instance(phi: &Formula, x: &VarName, y: &VarName) -> Result<Formula, SchemeError> {
    check_param(phi, y, Some(x))?;
    let mut avoid = phi.all_names();
    avoid.extend([x.clone(), y.clone()]);
    let x_set = pick("X", &mut avoid);
    let z_set = pick("Z", &mut avoid);
    let u = pick("u", &mut avoid);
    let v = pick("v", &mut avoid);
    let premise = functional_premise(phi, x, y, &x_set, &mut avoid);
    let phi_vu = subst_set_var(&subst_set_var(phi, x, &tv(&v)), y, &tv(&u));
    let conclusion = Formula::exists(
        z_set.clone(),
        Formula::forall(
            u.clone(),
            Formula::iff(
                Formula::mem(tv(&u), tv(&z_set)),
                Formula::exists(v.clone(), Formula::and(Formula::mem(tv(&v), tv(&x_set)), phi_vu)),
            ),
        ),
    );
    let body = Formula::forall(x_set, Formula::implies(premise, conclusion));
    Ok(close_over(params_of(phi, &[x, y]), body))
}

/// `A X . ((A x . (x in X -> E! y . phi(x, y))) ->
///   E f . (f is a function on X /\ A x . (x in X -> A y . (f : x |-> y <-> phi(x, y)))))`.
pub fn main_instance(phi: &Formula, x: &VarName, y: &VarName) -> Result<Formula, SchemeError> {
    check_param(phi, y, Some(x))?;
    let mut avoid = phi.all_names();
    avoid.extend([x.clone(), y.clone()]);
    let x_set = pick("X", &mut avoid);
    let f = pick("f", &mut avoid);
    let premise = functional_premise(phi, x, y, &x_set, &mut avoid);
    let graph = Formula::forall(
        x.clone(),
        Formula::implies(
            Formula::mem(tv(x), tv(&x_set)),
            Formula::forall(y.clone(), Formula::iff(maps_to(&f, x, y, &avoid), phi.clone())),
        ),
    );
    let conclusion = Formula::exists(f.clone(), Formula::and(is_function_on(&f, &x_set, &avoid), graph));
    let body = Formula::forall(x_set, Formula::implies(premise, conclusion));
    Ok(close_over(params_of(phi, &[x, y]), body))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::{alpha_eq, well_formed};
    use crate::parser::print_formula;

    #[test]
    fn all_axioms_closed_well_formed_and_round_trip() {
        for name in AxiomName::ALL {
            let phi = axiom_formula(name);
            assert!(free_vars(&phi).is_empty(), "{name} not closed");
            assert_eq!(well_formed(&phi), Ok(()), "{name}");
            let back = parse_formula(&print_formula(&phi)).unwrap();
            assert!(alpha_eq(&back, &phi), "{name} does not round-trip");
        }
    }

    #[test]
    fn fam_empty_reg_text() {
        assert_eq!(print_formula(&axiom_formula(AxiomName::Fam)), FAM);
        assert!(alpha_eq(&axiom_formula(AxiomName::Empty), &parse_formula("E X . A y . ~(y in X)").unwrap()));
        assert_eq!(print_formula(&axiom_formula(AxiomName::Reg)), REG);
    }

    #[test]
    fn names_parse() {
        for name in AxiomName::ALL {
            assert_eq!(name.as_str().parse::<AxiomName>(), Ok(name));
        }
        assert!("PAIR".parse::<AxiomName>().is_err());
    }

    #[test]
    fn prod_matches_hand_written_text() {
        let text = "A X . A Y . E Z . A w . (w in Z <-> E x . (x in X /\\ E y . (y in Y /\\ \
                    A v . (v in w <-> v = x \\/ A s . (s in v <-> s = x \\/ s = y)))))";
        assert!(alpha_eq(&axiom_formula(AxiomName::Prod), &parse_formula(text).unwrap()));
    }

    #[test]
    fn tuple_builder_avoids_argument_names() {
        let [w, a, b] = ["v", "s", "p"].map(var);
        let t = is_tuple(&w, &a, &b, &BTreeSet::new());
        assert_eq!(free_vars(&t), [w, a, b].into());
    }

    #[test]
    fn sep_examples() {
        let z = var("z");
        let out = sep_instance(&parse_formula("~ z = z").unwrap(), &z).unwrap();
        let expected = parse_formula("A X . E Y . A z . (z in Y <-> (z in X /\\ ~ z = z))").unwrap();
        assert!(alpha_eq(&out, &expected), "{out}");

        let out = sep_instance(&parse_formula("z in W").unwrap(), &z).unwrap();
        let expected = parse_formula("A W . A X . E Y . A z . (z in Y <-> z in X /\\ z in W)").unwrap();
        assert!(alpha_eq(&out, &expected), "{out}");

        let out = sep_instance(&parse_formula("E w . w in z").unwrap(), &z).unwrap();
        assert!(free_vars(&out).is_empty());

        assert_eq!(
            sep_instance(&parse_formula("w = w").unwrap(), &z),
            Err(SchemeError::NotFree(z.clone()))
        );
    }

    #[test]
    fn sep_template_names_dodge_parameters() {
        let out = sep_instance(&parse_formula("z in X /\\ z in Y").unwrap(), &var("z")).unwrap();
        assert!(free_vars(&out).is_empty());
        assert_eq!(well_formed(&out), Ok(()));
        let expected = parse_formula("A X . A Y . A X1 . E Y1 . A z . (z in Y1 <-> z in X1 /\\ (z in X /\\ z in Y))").unwrap();
        assert!(alpha_eq(&out, &expected), "{out}");
    }

    #[test]
    fn sub_and_main_are_closed() {
        let (x, y) = (var("x"), var("y"));
        for src in ["y = x", "A w . (w in y <-> w = x)", "y = x /\\ ~ y = x", "y = W"] {
            let phi = parse_formula(src).unwrap();
            let s = sub_instance(&phi, &x, &y).unwrap();
            let m = main_instance(&phi, &x, &y).unwrap();
            for out in [s, m] {
                assert!(free_vars(&out).is_empty(), "{out}");
                assert_eq!(well_formed(&out), Ok(()));
            }
        }
    }

    #[test]
    fn sub_identity_shape() {
        let phi = parse_formula("y = x").unwrap();
        let out = sub_instance(&phi, &var("x"), &var("y")).unwrap();
        let expected = parse_formula(
            "A X . ((A x . (x in X -> E y . (y = x /\\ A y1 . (y1 = x -> y1 = y)))) -> \
             E Z . A u . (u in Z <-> E v . (v in X /\\ u = v)))",
        )
        .unwrap();
        assert!(alpha_eq(&out, &expected), "{out}");
    }

    #[test]
    fn scheme_rejects_families() {
        let phi = parse_formula("fam u[i] in z . y = x").unwrap();
        assert_eq!(sub_instance(&phi, &var("x"), &var("y")), Err(SchemeError::HasFamilies));
    }

    #[test]
    fn no_universal_set_text() {
        let phi = no_universal_set();
        assert!(free_vars(&phi).is_empty());
        assert_eq!(print_formula(&phi), NO_UNIVERSAL_SET);
    }
}
