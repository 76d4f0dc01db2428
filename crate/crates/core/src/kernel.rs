//! Hilbert-style proof checker.
//!
//! A `.fastproof` script is a sequence of numbered lines
//!
//! ```text
//! <n> <formula> ; <rule> <args>
//! ```
//!
//! closed by `qed <n>` naming the last line, whose formula is the goal. Rules:
//! `axiom NAME`, `mp MAJOR MINOR`, `taut N..`, `ui N TERM`, `ug N VAR`,
//! `el1 N LITERAL`, `el2 N [LIT -> TERM, ..]` and `expand N`.

use std::collections::BTreeMap;
use std::fmt;

use crate::ast::{
    alpha_eq, alpha_normalize, subst_family, subst_set_var, well_formed, FamilyAssignment, Formula, SubstError,
    Term, VarName,
};
use crate::axioms::{axiom_formula, AxiomName};
use crate::expander::{expand_finite_family, expand_index_quantifiers};
use crate::hf::HfSet;
use crate::parser::{lex, ParseError, Parser, SourceSpan, Tok};

/// Largest number of propositional atoms the tautology check will table.
pub const MAX_TAUT_ATOMS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom(AxiomName),
    Mp { major: usize, minor: usize },
    Taut(Vec<usize>),
    Ui { premise: usize, witness: Term },
    Ug { premise: usize, var: VarName },
    El1 { premise: usize, index_set: HfSet },
    El2 { premise: usize, assignment: FamilyAssignment },
    Expand { premise: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Axiom,
    Mp,
    Taut,
    Ui,
    Ug,
    El1,
    El2,
    Expand,
}

impl Rule {
    pub const ALL: [Rule; 8] = [Rule::Axiom, Rule::Mp, Rule::Taut, Rule::Ui, Rule::Ug, Rule::El1, Rule::El2, Rule::Expand];

    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Axiom => "axiom",
            Rule::Mp => "mp",
            Rule::Taut => "taut",
            Rule::Ui => "ui",
            Rule::Ug => "ug",
            Rule::El1 => "el1",
            Rule::El2 => "el2",
            Rule::Expand => "expand",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Justification {
    pub fn rule(&self) -> Rule {
        match self {
            Justification::Axiom(_) => Rule::Axiom,
            Justification::Mp { .. } => Rule::Mp,
            Justification::Taut(_) => Rule::Taut,
            Justification::Ui { .. } => Rule::Ui,
            Justification::Ug { .. } => Rule::Ug,
            Justification::El1 { .. } => Rule::El1,
            Justification::El2 { .. } => Rule::El2,
            Justification::Expand { .. } => Rule::Expand,
        }
    }

    /// Line numbers cited by this justification.
    pub fn citations(&self) -> Vec<usize> {
        match self {
            Justification::Axiom(_) => Vec::new(),
            Justification::Mp { major, minor } => vec![*major, *minor],
            Justification::Taut(ps) => ps.clone(),
            Justification::Ui { premise, .. }
            | Justification::Ug { premise, .. }
            | Justification::El1 { premise, .. }
            | Justification::El2 { premise, .. }
            | Justification::Expand { premise } => vec![*premise],
        }
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rule())?;
        match self {
            Justification::Axiom(name) => write!(f, " {name}"),
            Justification::Mp { major, minor } => write!(f, " {major} {minor}"),
            Justification::Taut(ps) => ps.iter().try_for_each(|p| write!(f, " {p}")),
            Justification::Ui { premise, witness } => write!(f, " {premise} {witness}"),
            Justification::Ug { premise, var } => write!(f, " {premise} {var}"),
            Justification::El1 { premise, index_set } => write!(f, " {premise} {index_set}"),
            Justification::El2 { premise, assignment } => {
                write!(f, " {premise} [")?;
                for (k, (c, t)) in assignment.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c} -> {t}")?;
                }
                f.write_str("]")
            }
            Justification::Expand { premise } => write!(f, " {premise}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub line_no: usize,
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScript {
    pub lines: Vec<ProofLine>,
    pub goal: Formula,
}

impl fmt::Display for ProofScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{} {} ; {}", l.line_no, l.formula, l.justification)?;
        }
        if let Some(last) = self.lines.last() {
            writeln!(f, "qed {}", last.line_no)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Script syntax

fn shift(span: SourceSpan, by: usize) -> SourceSpan {
    SourceSpan::new(span.start + by, span.end + by)
}

impl ProofScript {
    pub fn parse(src: &str) -> Result<ProofScript, ParseError> {
        let mut lines: Vec<ProofLine> = Vec::new();
        let mut qed: Option<(usize, SourceSpan)> = None;
        let mut offset = 0;
        for raw in src.split_inclusive('\n') {
            let start = offset;
            offset += raw.len();
            let text = raw.trim_end_matches(['\n', '\r']);
            let toks: Vec<(Tok, SourceSpan)> = lex(text)
                .map_err(|e| ParseError::new(shift(e.span, start), e.message))?
                .into_iter()
                .map(|(t, s)| (t, shift(s, start)))
                .collect();
            if toks.is_empty() {
                continue;
            }
            if let Some((_, s)) = qed {
                return Err(ParseError::new(s, "`qed` must be the last line"));
            }
            let mut p = Parser::new(&toks, start + text.len());
            if matches!(p.peek_tok(), Some(Tok::Ident(k)) if k == "qed") {
                let (_, span) = p.word("`qed`")?;
                let n = p.number("a line number after `qed`")?;
                if !p.at_end() {
                    return Err(p.err("end of line"));
                }
                qed = Some((n, span));
                continue;
            }
            let line = parse_line(&mut p)?;
            if let Some(prev) = lines.last() {
                if line.line_no <= prev.line_no {
                    return Err(ParseError::new(toks[0].1, format!("line number {} is not increasing", line.line_no)));
                }
            }
            lines.push(line);
        }
        let end = SourceSpan::new(src.len(), src.len());
        let Some((n, span)) = qed else {
            return Err(ParseError::new(end, "missing `qed <n>` line"));
        };
        let Some(last) = lines.last() else {
            return Err(ParseError::new(span, "script has no proof lines"));
        };
        if last.line_no != n {
            return Err(ParseError::new(span, format!("`qed {n}` must name the last line ({})", last.line_no)));
        }
        let goal = last.formula.clone();
        Ok(ProofScript { lines, goal })
    }
}

fn parse_line(p: &mut Parser<'_>) -> Result<ProofLine, ParseError> {
    let line_no = p.number("a line number")?;
    if line_no == 0 {
        return Err(p.err("a positive line number"));
    }
    let (formula, spans) = p.formula()?;
    if let Err(v) = well_formed(&formula) {
        return Err(ParseError::new(spans.lookup(&v.position), v.message));
    }
    p.expect_tok(&Tok::Semi, "`;` before the rule")?;
    let (rule, rule_span) = p.word("a rule name")?;
    let justification = match rule.as_str() {
        "axiom" => {
            let (name, span) = p.word("an axiom name")?;
            Justification::Axiom(name.parse().map_err(|e: crate::axioms::UnknownAxiom| ParseError::new(span, e.to_string()))?)
        }
        "mp" => {
            let major = p.number("the major premise")?;
            let minor = p.number("the minor premise")?;
            Justification::Mp { major, minor }
        }
        "taut" => {
            let mut ps = Vec::new();
            while matches!(p.peek_tok(), Some(Tok::Number(_))) {
                ps.push(p.number("a line number")?);
            }
            Justification::Taut(ps)
        }
        "ui" => {
            let premise = p.number("a premise line")?;
            let (witness, _) = p.term()?;
            Justification::Ui { premise, witness }
        }
        "ug" => {
            let premise = p.number("a premise line")?;
            let (var, _) = p.ident("a variable")?;
            Justification::Ug { premise, var }
        }
        "el1" => {
            let premise = p.number("a premise line")?;
            let index_set = p.hf()?;
            Justification::El1 { premise, index_set }
        }
        "el2" => {
            let premise = p.number("a premise line")?;
            p.expect_tok(&Tok::LBrack, "`[`")?;
            let mut assignment = FamilyAssignment::new();
            if !p.eat_tok(&Tok::RBrack) {
                loop {
                    let label_span = p.span_here();
                    let label = p.hf()?;
                    p.expect_tok(&Tok::Arrow, "`->`")?;
                    let (t, _) = p.term()?;
                    if assignment.insert(label.clone(), t).is_some() {
                        return Err(ParseError::new(label_span, format!("label {label} assigned twice")));
                    }
                    if p.eat_tok(&Tok::Comma) {
                        continue;
                    }
                    p.expect_tok(&Tok::RBrack, "`]`")?;
                    break;
                }
            }
            Justification::El2 { premise, assignment }
        }
        "expand" => Justification::Expand { premise: p.number("a premise line")? },
        other => return Err(ParseError::new(rule_span, format!("unknown rule `{other}`"))),
    };
    if !p.at_end() {
        return Err(p.err("end of line"));
    }
    Ok(ProofLine { line_no, formula, justification })
}

// ---------------------------------------------------------------------------
// Checking

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    BadAxiom,
    BadMp,
    NotTaut,
    BadWitness,
    BadIndexSet,
    AssignmentDomain,
    NotLiteral,
    BadExpand,
    /// A cited line is missing or not earlier than the citing line.
    BadCitation,
    /// A generalization line is not `A x . premise`.
    BadGen,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::BadAxiom => "BAD_AXIOM",
            Reason::BadMp => "BAD_MP",
            Reason::NotTaut => "NOT_TAUT",
            Reason::BadWitness => "BAD_WITNESS",
            Reason::BadIndexSet => "BAD_INDEX_SET",
            Reason::AssignmentDomain => "ASSIGNMENT_DOMAIN",
            Reason::NotLiteral => "NOT_LITERAL",
            Reason::BadExpand => "BAD_EXPAND",
            Reason::BadCitation => "BAD_CITATION",
            Reason::BadGen => "BAD_GEN",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub line: usize,
    pub reason: Reason,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected(Rejection),
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }

    pub fn reason(&self) -> Option<Reason> {
        match self {
            Verdict::Accepted => None,
            Verdict::Rejected(r) => Some(r.reason),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accepted => f.write_str("accepted"),
            Verdict::Rejected(r) => write!(f, "rejected line {} {}: {}", r.line, r.reason, r.detail),
        }
    }
}

type StepResult = Result<(), (Reason, String)>;

fn fail(reason: Reason, detail: impl Into<String>) -> StepResult {
    Err((reason, detail.into()))
}

/// Checks one inference given the formulas of the lines it cites, in
/// citation order.
pub fn check_step(justification: &Justification, cited: &[&Formula], formula: &Formula) -> Result<(), (Reason, String)> {
    match justification {
        Justification::Axiom(name) => {
            if alpha_eq(formula, &axiom_formula(*name)) {
                Ok(())
            } else {
                fail(Reason::BadAxiom, format!("formula is not axiom {name}"))
            }
        }
        Justification::Mp { .. } => {
            let (major, minor) = (cited[0], cited[1]);
            match major {
                Formula::Implies(a, b) if alpha_eq(a, minor) && alpha_eq(b, formula) => Ok(()),
                Formula::Implies(a, _) if !alpha_eq(a, minor) => fail(Reason::BadMp, "minor premise is not the antecedent"),
                Formula::Implies(..) => fail(Reason::BadMp, "formula is not the consequent of the major premise"),
                _ => fail(Reason::BadMp, "major premise is not an implication"),
            }
        }
        Justification::Taut(_) => match tautological_consequence(cited, formula) {
            Ok(true) => Ok(()),
            Ok(false) => fail(Reason::NotTaut, "not a propositional consequence of the cited lines"),
            Err(n) => fail(Reason::NotTaut, format!("{n} atoms exceed the limit of {MAX_TAUT_ATOMS}")),
        },
        Justification::Ui { witness, .. } => match cited[0] {
            Formula::Forall(x, body) => {
                if matches!(witness, Term::App { .. }) {
                    return fail(Reason::BadWitness, "witness must be a set variable or literal");
                }
                if alpha_eq(formula, &subst_set_var(body, x, witness)) {
                    Ok(())
                } else {
                    fail(Reason::BadWitness, format!("formula is not the instance at {witness}"))
                }
            }
            _ => fail(Reason::BadWitness, "premise is not universally quantified"),
        },
        Justification::Ug { var, .. } => {
            if alpha_eq(formula, &Formula::forall(var.clone(), cited[0].clone())) {
                Ok(())
            } else {
                fail(Reason::BadGen, format!("formula is not `A {var} .` applied to the premise"))
            }
        }
        Justification::El1 { index_set, .. } => match cited[0] {
            Formula::Forall(x, body) if matches!(**body, Formula::ForallFamily { .. }) => {
                if alpha_eq(formula, &subst_set_var(body, x, &Term::Lit(index_set.clone()))) {
                    Ok(())
                } else {
                    fail(Reason::BadIndexSet, format!("formula is not the instance at index set {index_set}"))
                }
            }
            _ => fail(Reason::BadIndexSet, "premise is not `A X . fam ...`"),
        },
        Justification::El2 { assignment, .. } => {
            let Formula::ForallFamily { family, .. } = cited[0] else {
                return fail(Reason::BadWitness, "premise is not a family binder");
            };
            match subst_family(cited[0], family, assignment) {
                Ok(inst) if alpha_eq(formula, &inst) => Ok(()),
                Ok(_) => fail(Reason::BadWitness, "formula is not the instance under the assignment"),
                Err(SubstError::NotLiteral) => fail(Reason::NotLiteral, "family index set is not a literal"),
                Err(e @ (SubstError::DomainMismatch { .. } | SubstError::LabelOutsideIndexSet(_))) => {
                    fail(Reason::AssignmentDomain, e.to_string())
                }
                Err(e) => fail(Reason::BadWitness, e.to_string()),
            }
        }
        Justification::Expand { .. } => {
            let premise = cited[0];
            if alpha_eq(formula, &expand_index_quantifiers(premise)) {
                return Ok(());
            }
            match expand_finite_family(premise) {
                Ok(full) if alpha_eq(formula, &full) => Ok(()),
                _ => fail(Reason::BadExpand, "formula is not the finite expansion of the premise"),
            }
        }
    }
}

/// Checks a whole script and reports the first failing line.
pub fn check_proof(script: &ProofScript) -> Verdict {
    let mut proved: BTreeMap<usize, &Formula> = BTreeMap::new();
    for line in &script.lines {
        let reject = |reason, detail| Verdict::Rejected(Rejection { line: line.line_no, reason, detail });
        let mut cited = Vec::new();
        for c in line.justification.citations() {
            match proved.get(&c) {
                Some(f) if c < line.line_no => cited.push(*f),
                _ => return reject(Reason::BadCitation, format!("line {c} is not an earlier line")),
            }
        }
        if let Err((reason, detail)) = check_step(&line.justification, &cited, &line.formula) {
            return reject(reason, detail);
        }
        proved.insert(line.line_no, &line.formula);
    }
    match script.lines.last() {
        Some(last) if alpha_eq(&last.formula, &script.goal) => Verdict::Accepted,
        Some(last) => Verdict::Rejected(Rejection {
            line: last.line_no,
            reason: Reason::BadCitation,
            detail: "last line is not the goal".into(),
        }),
        None => Verdict::Rejected(Rejection { line: 0, reason: Reason::BadCitation, detail: "empty script".into() }),
    }
}

// ---------------------------------------------------------------------------
// Truth tables

struct Atoms {
    keys: Vec<Formula>,
}

impl Atoms {
    fn index(&mut self, phi: &Formula) -> usize {
        let key = alpha_normalize(phi);
        match self.keys.iter().position(|k| *k == key) {
            Some(p) => p,
            None => {
                self.keys.push(key);
                self.keys.len() - 1
            }
        }
    }
}

enum Prop {
    Atom(usize),
    Not(Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    Implies(Box<Prop>, Box<Prop>),
    Iff(Box<Prop>, Box<Prop>),
}

fn skeleton(phi: &Formula, atoms: &mut Atoms) -> Prop {
    let mut b = |a: &Formula| Box::new(skeleton(a, atoms));
    match phi {
        Formula::Not(a) => Prop::Not(b(a)),
        Formula::And(l, r) => {
            let l = b(l);
            Prop::And(l, b(r))
        }
        Formula::Or(l, r) => {
            let l = b(l);
            Prop::Or(l, b(r))
        }
        Formula::Implies(l, r) => {
            let l = b(l);
            Prop::Implies(l, b(r))
        }
        Formula::Iff(l, r) => {
            let l = b(l);
            Prop::Iff(l, b(r))
        }
        _ => Prop::Atom(atoms.index(phi)),
    }
}

fn value(p: &Prop, row: u32) -> bool {
    match p {
        Prop::Atom(k) => row & (1 << k) != 0,
        Prop::Not(a) => !value(a, row),
        Prop::And(l, r) => value(l, row) && value(r, row),
        Prop::Or(l, r) => value(l, row) || value(r, row),
        Prop::Implies(l, r) => !value(l, row) || value(r, row),
        Prop::Iff(l, r) => value(l, row) == value(r, row),
    }
}

/// Whether `conclusion` is true in every row where all `premises` are, with
/// maximal non-propositional subformulas as atoms (identified up to
/// alpha-equivalence). Errors with the atom count when it exceeds the cap.
pub fn tautological_consequence(premises: &[&Formula], conclusion: &Formula) -> Result<bool, usize> {
    let mut atoms = Atoms { keys: Vec::new() };
    let ps: Vec<Prop> = premises.iter().map(|p| skeleton(p, &mut atoms)).collect();
    let c = skeleton(conclusion, &mut atoms);
    let n = atoms.keys.len();
    if n > MAX_TAUT_ATOMS {
        return Err(n);
    }
    Ok((0..(1u32 << n)).all(|row| !ps.iter().all(|p| value(p, row)) || value(&c, row)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_formula;

    const PAIR: &str = "\
1 A X . fam u[i] in X . E Z . A y . (y in Z <-> E i in X . y = u[i]) ; axiom FAM
2 fam u[i] in {0, 1} . E Z . A y . (y in Z <-> E i in {0, 1} . y = u[i]) ; el1 1 {0, 1}
3 E Z . A y . (y in Z <-> y = a \\/ y = b) ; el2 2 [0 -> a, 1 -> b]
4 A b . E Z . A y . (y in Z <-> y = a \\/ y = b) ; ug 3 b
5 A a . A b . E Z . A y . (y in Z <-> y = a \\/ y = b) ; ug 4 a
qed 5
";

    #[test]
    fn pair_accepted() {
        let s = ProofScript::parse(PAIR).unwrap();
        assert_eq!(check_proof(&s), Verdict::Accepted);
        assert_eq!(ProofScript::parse(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn incomplete_assignment() {
        let s = ProofScript::parse(&PAIR.replace("[0 -> a, 1 -> b]", "[0 -> a]")).unwrap();
        assert_eq!(check_proof(&s).reason(), Some(Reason::AssignmentDomain));
    }

    #[test]
    fn wrong_index_literal() {
        let s = ProofScript::parse(&PAIR.replace("el1 1 {0, 1}", "el1 1 {0, 2}")).unwrap();
        assert_eq!(check_proof(&s).reason(), Some(Reason::BadIndexSet));
    }

    #[test]
    fn forward_citation() {
        let s = ProofScript::parse(&PAIR.replace("ug 3 b", "ug 5 b")).unwrap();
        assert_eq!(check_proof(&s).reason(), Some(Reason::BadCitation));
    }

    #[test]
    fn script_syntax_errors() {
        assert!(ProofScript::parse("1 a = a ; taut\n").is_err());
        assert!(ProofScript::parse("1 a = a ; taut\nqed 2\n").is_err());
        assert!(ProofScript::parse("1 a = a ; bogus\nqed 1\n").is_err());
        assert!(ProofScript::parse("2 a = a ; taut\n1 a = a ; taut\nqed 1\n").is_err());
        let e = ProofScript::parse("1 a = a ; taut\n2 a = ; taut\nqed 2\n").unwrap_err();
        assert_eq!(e.line_col("1 a = a ; taut\n2 a = ; taut\nqed 2\n").0, 2);
    }

    #[test]
    fn taut_cases() {
        let f = |s: &str| parse_formula(s).unwrap();
        let (a, b) = (f("a in b"), f("A x . x in a"));
        assert_eq!(tautological_consequence(&[], &f("a in b \\/ ~ a in b")), Ok(true));
        assert_eq!(tautological_consequence(&[&a], &f("a in b \\/ c = c")), Ok(true));
        assert_eq!(tautological_consequence(&[&b], &f("A y . y in a")), Ok(true));
        assert_eq!(tautological_consequence(&[&a], &b), Ok(false));
        let wide = (0..17).map(|k| format!("x{k} = x{k}")).collect::<Vec<_>>().join(" \\/ ");
        assert_eq!(tautological_consequence(&[], &f(&wide)), Err(17));
    }

    #[test]
    fn mp_and_ui() {
        let f = |s: &str| parse_formula(s).unwrap();
        let mp = Justification::Mp { major: 1, minor: 2 };
        assert!(check_step(&mp, &[&f("a = a -> b = b"), &f("a = a")], &f("b = b")).is_ok());
        assert_eq!(check_step(&mp, &[&f("a = a -> b = b"), &f("b = b")], &f("b = b")).unwrap_err().0, Reason::BadMp);
        let ui = Justification::Ui { premise: 1, witness: Term::var("y") };
        assert!(check_step(&ui, &[&f("A x . E y . x in y")], &f("E y1 . y in y1")).is_ok());
        assert_eq!(check_step(&ui, &[&f("A x . E y . x in y")], &f("E y . y in y")).unwrap_err().0, Reason::BadWitness);
    }
}
