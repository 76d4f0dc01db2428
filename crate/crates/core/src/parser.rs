//! Concrete ASCII syntax.
//!
//! ```text
//! formula := imp ( '<->' formula )?
//! imp     := or ( '->' imp )?
//! or      := and ( '\/' and )*
//! and     := unary ( '/\' unary )*
//! unary   := '~' unary | '(' formula ')' | quant | term ( 'in' | '=' ) term
//! quant   := 'A' x '.' formula | 'E' x '.' formula
//!          | 'A' i 'in' term '.' formula | 'E' i 'in' term '.' formula
//!          | 'fam' u '[' i ']' 'in' term '.' formula
//! term    := x | u '[' index ']' | literal | numeral
//! index   := i | literal | numeral
//! literal := '{' ( hf ( ',' hf )* )? '}'
//! ```
//!
//! Quantifier bodies extend as far to the right as possible. `#` starts a
//! comment running to the end of the line.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::ast::{well_formed, Formula, Index, Position, Term, VarName};
use crate::hf::HfSet;

/// Numerals above this bound are rejected to keep literal depth sane.
const MAX_NUMERAL: usize = 4096;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }

    fn join(self, other: SourceSpan) -> SourceSpan {
        SourceSpan::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{message} at bytes {span}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(span: SourceSpan, message: impl Into<String>) -> Self {
        ParseError { span, message: message.into() }
    }

    /// 1-based line and column of the error start.
    pub fn line_col(&self, src: &str) -> (usize, usize) {
        let upto = &src[..self.span.start.min(src.len())];
        let line = upto.matches('\n').count() + 1;
        let col = upto.rfind('\n').map_or(upto.len(), |p| upto.len() - p - 1) + 1;
        (line, col)
    }
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Number(usize),
    LBrace,
    RBrace,
    LBrack,
    RBrack,
    LParen,
    RParen,
    Comma,
    Dot,
    Semi,
    Tilde,
    And,
    Or,
    Arrow,
    Iff,
    Equals,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number(n) => write!(f, "`{n}`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::LBrack => f.write_str("`[`"),
            Tok::RBrack => f.write_str("`]`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::And => f.write_str("`/\\`"),
            Tok::Or => f.write_str("`\\/`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Iff => f.write_str("`<->`"),
            Tok::Equals => f.write_str("`=`"),
        }
    }
}

pub(crate) fn lex(src: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut p = 0;
    while p < bytes.len() {
        let c = bytes[p];
        if c.is_ascii_whitespace() {
            p += 1;
            continue;
        }
        if c == b'#' {
            while p < bytes.len() && bytes[p] != b'\n' {
                p += 1;
            }
            continue;
        }
        let start = p;
        let rest = &src[p..];
        let (tok, len) = if c.is_ascii_alphabetic() || c == b'_' {
            let len = rest.bytes().take_while(|b| b.is_ascii_alphanumeric() || *b == b'_').count();
            (Tok::Ident(rest[..len].to_owned()), len)
        } else if c.is_ascii_digit() {
            let len = rest.bytes().take_while(u8::is_ascii_digit).count();
            let n = rest[..len]
                .parse::<usize>()
                .ok()
                .filter(|n| *n <= MAX_NUMERAL)
                .ok_or_else(|| ParseError::new(SourceSpan::new(start, start + len), format!("numeral exceeds {MAX_NUMERAL}")))?;
            (Tok::Number(n), len)
        } else if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("->") {
            (Tok::Arrow, 2)
        } else if rest.starts_with("/\\") {
            (Tok::And, 2)
        } else if rest.starts_with("\\/") {
            (Tok::Or, 2)
        } else {
            let t = match c {
                b'{' => Tok::LBrace,
                b'}' => Tok::RBrace,
                b'[' => Tok::LBrack,
                b']' => Tok::RBrack,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b',' => Tok::Comma,
                b'.' => Tok::Dot,
                b';' => Tok::Semi,
                b'~' => Tok::Tilde,
                b'=' => Tok::Equals,
                _ => {
                    let ch = rest.chars().next().unwrap_or('?');
                    return Err(ParseError::new(
                        SourceSpan::new(start, start + ch.len_utf8()),
                        format!("unknown token `{ch}`"),
                    ));
                }
            };
            (t, 1)
        };
        out.push((tok, SourceSpan::new(start, start + len)));
        p += len;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser

/// Source spans mirroring the shape of a parsed formula: one node per
/// subformula or term, with children in [`Position`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanTree {
    pub span: SourceSpan,
    pub children: Vec<SpanTree>,
}

impl SpanTree {
    fn leaf(span: SourceSpan) -> Self {
        SpanTree { span, children: Vec::new() }
    }

    /// Span of the node at `pos`, or of the deepest ancestor that exists.
    pub fn lookup(&self, pos: &Position) -> SourceSpan {
        let mut node = self;
        for &k in &pos.0 {
            match node.children.get(k) {
                Some(c) => node = c,
                None => break,
            }
        }
        node.span
    }
}

pub(crate) struct Parser<'a> {
    toks: &'a [(Tok, SourceSpan)],
    pos: usize,
    src_len: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(toks: &'a [(Tok, SourceSpan)], src_len: usize) -> Self {
        Parser { toks, pos: 0, src_len }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> SourceSpan {
        self.toks
            .get(self.pos)
            .map(|(_, s)| *s)
            .unwrap_or(SourceSpan::new(self.src_len, self.src_len))
    }

    fn prev_end(&self) -> usize {
        self.pos.checked_sub(1).map_or(0, |p| self.toks[p].1.end)
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn bump(&mut self) -> Option<(Tok, SourceSpan)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, what: &str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::new(self.here(), format!("expected {what}, found {t}")),
            None => ParseError::new(self.here(), format!("expected {what}, found end of input")),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<SourceSpan, ParseError> {
        if self.peek() == Some(tok) {
            Ok(self.bump().map(|(_, s)| s).unwrap_or_default())
        } else if matches!(tok, Tok::RParen | Tok::RBrace | Tok::RBrack) {
            Err(ParseError::new(self.here(), format!("unbalanced delimiter: expected {what}")))
        } else {
            Err(self.error_here(what))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    pub(crate) fn ident(&mut self, what: &str) -> Result<(VarName, SourceSpan), ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let span = self.here();
                let name = VarName::new(s).map_err(|e| ParseError::new(span, e.to_string()))?;
                self.pos += 1;
                Ok((name, span))
            }
            _ => Err(self.error_here(what)),
        }
    }

    pub(crate) fn formula(&mut self) -> Result<(Formula, SpanTree), ParseError> {
        let (lhs, ls) = self.implication()?;
        if self.eat(&Tok::Iff) {
            let (rhs, rs) = self.formula()?;
            let span = ls.span.join(rs.span);
            return Ok((Formula::iff(lhs, rhs), SpanTree { span, children: vec![ls, rs] }));
        }
        Ok((lhs, ls))
    }

    fn implication(&mut self) -> Result<(Formula, SpanTree), ParseError> {
        let (lhs, ls) = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let (rhs, rs) = self.implication()?;
            let span = ls.span.join(rs.span);
            return Ok((Formula::implies(lhs, rhs), SpanTree { span, children: vec![ls, rs] }));
        }
        Ok((lhs, ls))
    }

    fn disjunction(&mut self) -> Result<(Formula, SpanTree), ParseError> {
        let (mut acc, mut accs) = self.conjunction()?;
        while self.eat(&Tok::Or) {
            let (rhs, rs) = self.conjunction()?;
            let span = accs.span.join(rs.span);
            acc = Formula::or(acc, rhs);
            accs = SpanTree { span, children: vec![accs, rs] };
        }
        Ok((acc, accs))
    }

    fn conjunction(&mut self) -> Result<(Formula, SpanTree), ParseError> {
        let (mut acc, mut accs) = self.unary()?;
        while self.eat(&Tok::And) {
            let (rhs, rs) = self.unary()?;
            let span = accs.span.join(rs.span);
            acc = Formula::and(acc, rhs);
            accs = SpanTree { span, children: vec![accs, rs] };
        }
        Ok((acc, accs))
    }

    fn unary(&mut self) -> Result<(Formula, SpanTree), ParseError> {
        let start = self.here();
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                let (a, s) = self.unary()?;
                let span = start.join(s.span);
                Ok((Formula::not(a), SpanTree { span, children: vec![s] }))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let (a, mut s) = self.formula()?;
                let close = self.expect(&Tok::RParen, "`)`")?;
                s.span = start.join(close);
                Ok((a, s))
            }
            Some(Tok::Ident(k)) if k == "A" || k == "E" => self.quantifier(k == "A"),
            Some(Tok::Ident(k)) if k == "fam" => self.family_binder(),
            Some(_) => self.atom(),
            None => Err(self.error_here("a formula")),
        }
    }

    fn quantifier(&mut self, universal: bool) -> Result<(Formula, SpanTree), ParseError> {
        let start = self.here();
        self.pos += 1;
        let (x, _) = self.ident("a variable name")?;
        if self.is_keyword("in") {
            self.pos += 1;
            let (set, set_span) = self.term()?;
            self.expect(&Tok::Dot, "`.`")?;
            let (body, bs) = self.formula()?;
            let span = start.join(bs.span);
            let f = if universal {
                Formula::forall_index(x, set, body)
            } else {
                Formula::exists_index(x, set, body)
            };
            return Ok((f, SpanTree { span, children: vec![set_span, bs] }));
        }
        self.expect(&Tok::Dot, "`.` or `in`")?;
        let (body, bs) = self.formula()?;
        let span = start.join(bs.span);
        let f = if universal { Formula::forall(x, body) } else { Formula::exists(x, body) };
        Ok((f, SpanTree { span, children: vec![bs] }))
    }

    fn family_binder(&mut self) -> Result<(Formula, SpanTree), ParseError> {
        let start = self.here();
        self.pos += 1;
        let (u, _) = self.ident("a family name")?;
        self.expect(&Tok::LBrack, "`[`")?;
        let (i, _) = self.ident("an index variable")?;
        self.expect(&Tok::RBrack, "`]`")?;
        if !self.is_keyword("in") {
            return Err(self.error_here("`in`"));
        }
        self.pos += 1;
        let (set, set_span) = self.term()?;
        self.expect(&Tok::Dot, "`.`")?;
        let (body, bs) = self.formula()?;
        let span = start.join(bs.span);
        Ok((Formula::forall_family(u, i, set, body), SpanTree { span, children: vec![set_span, bs] }))
    }

    fn atom(&mut self) -> Result<(Formula, SpanTree), ParseError> {
        let (lhs, ls) = self.term()?;
        let is_mem = if self.is_keyword("in") {
            true
        } else if self.peek() == Some(&Tok::Equals) {
            false
        } else {
            return Err(self.error_here("`in` or `=`"));
        };
        self.pos += 1;
        let (rhs, rs) = self.term()?;
        let span = ls.span.join(rs.span);
        let f = if is_mem { Formula::mem(lhs, rhs) } else { Formula::eq(lhs, rhs) };
        Ok((f, SpanTree { span, children: vec![ls, rs] }))
    }

    pub(crate) fn term(&mut self) -> Result<(Term, SpanTree), ParseError> {
        let start = self.here();
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let (name, span) = self.ident("a term")?;
                if self.eat(&Tok::LBrack) {
                    let index = match self.peek() {
                        Some(Tok::Ident(_)) => Index::Var(self.ident("an index")?.0),
                        Some(Tok::Number(_) | Tok::LBrace) => Index::Const(self.hf()?),
                        _ => return Err(self.error_here("an index")),
                    };
                    let close = self.expect(&Tok::RBrack, "`]`")?;
                    return Ok((Term::App { family: name, index }, SpanTree::leaf(start.join(close))));
                }
                Ok((Term::Var(name), SpanTree::leaf(span)))
            }
            Some(Tok::Number(_) | Tok::LBrace) => {
                let h = self.hf()?;
                Ok((Term::Lit(h), SpanTree::leaf(SourceSpan::new(start.start, self.prev_end()))))
            }
            _ => Err(self.error_here("a term")),
        }
    }

    /// A numeral or brace literal.
    pub(crate) fn hf(&mut self) -> Result<HfSet, ParseError> {
        match self.peek() {
            Some(Tok::Number(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(HfSet::numeral(n))
            }
            Some(Tok::LBrace) => {
                self.pos += 1;
                let mut elems = Vec::new();
                if !self.eat(&Tok::RBrace) {
                    loop {
                        elems.push(self.hf()?);
                        if self.eat(&Tok::Comma) {
                            continue;
                        }
                        self.expect(&Tok::RBrace, "`}`")?;
                        break;
                    }
                }
                Ok(HfSet::canonical(elems))
            }
            _ => Err(self.error_here("a set literal")),
        }
    }

    pub(crate) fn peek_tok(&self) -> Option<&Tok> {
        self.peek()
    }

    /// Any identifier, reserved words included.
    pub(crate) fn word(&mut self, what: &str) -> Result<(String, SourceSpan), ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let r = (s.clone(), self.here());
                self.pos += 1;
                Ok(r)
            }
            _ => Err(self.error_here(what)),
        }
    }

    pub(crate) fn span_here(&self) -> SourceSpan {
        self.here()
    }

    pub(crate) fn eat_tok(&mut self, tok: &Tok) -> bool {
        self.eat(tok)
    }

    pub(crate) fn expect_tok(&mut self, tok: &Tok, what: &str) -> Result<SourceSpan, ParseError> {
        self.expect(tok, what)
    }

    pub(crate) fn err(&self, what: &str) -> ParseError {
        self.error_here(what)
    }

    pub(crate) fn number(&mut self, what: &str) -> Result<usize, ParseError> {
        match self.peek() {
            Some(Tok::Number(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error_here(what)),
        }
    }
}

fn check_unbalanced(toks: &[(Tok, SourceSpan)]) -> Result<(), ParseError> {
    let mut stack: Vec<(&Tok, SourceSpan)> = Vec::new();
    for (t, s) in toks {
        match t {
            Tok::LParen | Tok::LBrace | Tok::LBrack => stack.push((t, *s)),
            Tok::RParen | Tok::RBrace | Tok::RBrack => {
                let want = match t {
                    Tok::RParen => Tok::LParen,
                    Tok::RBrace => Tok::LBrace,
                    _ => Tok::LBrack,
                };
                match stack.pop() {
                    Some((open, _)) if *open == want => {}
                    _ => return Err(ParseError::new(*s, format!("unbalanced delimiter {t}"))),
                }
            }
            _ => {}
        }
    }
    match stack.pop() {
        Some((t, s)) => Err(ParseError::new(s, format!("unbalanced delimiter {t} is never closed"))),
        None => Ok(()),
    }
}

/// Parses a formula and returns it with its span tree. The result is checked
/// for well-formedness; violations are reported at the offending subterm.
pub fn parse_formula_spanned(src: &str) -> Result<(Formula, SpanTree), ParseError> {
    let toks = lex(src)?;
    check_unbalanced(&toks)?;
    let mut p = Parser::new(&toks, src.len());
    let (phi, spans) = p.formula()?;
    if !p.at_end() {
        return Err(p.error_here("end of input"));
    }
    if let Err(v) = well_formed(&phi) {
        return Err(ParseError::new(spans.lookup(&v.position), v.message));
    }
    Ok((phi, spans))
}

pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    parse_formula_spanned(src).map(|(phi, _)| phi)
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let toks = lex(src)?;
    check_unbalanced(&toks)?;
    let mut p = Parser::new(&toks, src.len());
    let (t, _) = p.term()?;
    if !p.at_end() {
        return Err(p.error_here("end of input"));
    }
    Ok(t)
}

pub fn parse_hf(src: &str) -> Result<HfSet, ParseError> {
    let toks = lex(src)?;
    check_unbalanced(&toks)?;
    let mut p = Parser::new(&toks, src.len());
    let h = p.hf()?;
    if !p.at_end() {
        return Err(p.error_here("end of input"));
    }
    Ok(h)
}

// ---------------------------------------------------------------------------
// Printer

fn precedence(phi: &Formula) -> u8 {
    match phi {
        Formula::Iff(..) => 0,
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Not(_) => 4,
        Formula::Mem(..) | Formula::Eq(..) => 5,
        // Quantifiers are handled by the open-ended rule in `print_into`.
        _ => 5,
    }
}

fn is_binder(phi: &Formula) -> bool {
    matches!(
        phi,
        Formula::Forall(..)
            | Formula::Exists(..)
            | Formula::ForallFamily { .. }
            | Formula::ExistsIndex { .. }
            | Formula::ForallIndex { .. }
    )
}

/// Does printing `phi` without parentheses end in an open quantifier body?
fn ends_open(phi: &Formula) -> bool {
    match phi {
        _ if is_binder(phi) => true,
        Formula::Not(a) => ends_open(a),
        _ => false,
    }
}

pub fn print_term(t: &Term) -> String {
    match t {
        Term::Var(v) => v.to_string(),
        Term::Lit(h) => h.to_string(),
        Term::App { family, index } => match index {
            Index::Var(i) => format!("{family}[{i}]"),
            Index::Const(c) => format!("{family}[{c}]"),
        },
    }
}

/// Canonical text: single spaces between tokens, parentheses only where the
/// precedence table or an open quantifier body requires them, and binary
/// quantifier bodies always parenthesized.
pub fn print_formula(phi: &Formula) -> String {
    let mut out = String::new();
    print_into(&mut out, phi, true);
    out
}

/// `rightmost`: nothing follows this subformula at the current nesting level,
/// so an open quantifier body may run to the end.
fn print_into(out: &mut String, phi: &Formula, rightmost: bool) {
    if is_binder(phi) && !rightmost {
        out.push('(');
        print_into(out, phi, true);
        out.push(')');
        return;
    }
    match phi {
        Formula::Mem(a, b) => {
            let _ = write!(out, "{} in {}", print_term(a), print_term(b));
        }
        Formula::Eq(a, b) => {
            let _ = write!(out, "{} = {}", print_term(a), print_term(b));
        }
        Formula::Not(a) => {
            out.push('~');
            if precedence(a) < 4 {
                out.push('(');
                print_into(out, a, true);
                out.push(')');
            } else {
                out.push(' ');
                print_into(out, a, rightmost);
            }
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            let (op, prec, right_assoc) = match phi {
                Formula::And(..) => ("/\\", 3, false),
                Formula::Or(..) => ("\\/", 2, false),
                Formula::Implies(..) => ("->", 1, true),
                _ => ("<->", 0, true),
            };
            let pl = precedence(a);
            let left_parens = pl < prec || (pl == prec && right_assoc);
            if left_parens {
                out.push('(');
                print_into(out, a, true);
                out.push(')');
            } else {
                print_into(out, a, false);
            }
            let _ = write!(out, " {op} ");
            let pr = precedence(b);
            let right_parens = !is_binder(b) && (pr < prec || (pr == prec && !right_assoc));
            if right_parens || (ends_open(b) && !rightmost && !is_binder(b)) {
                out.push('(');
                print_into(out, b, true);
                out.push(')');
            } else {
                print_into(out, b, rightmost);
            }
        }
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            let q = if matches!(phi, Formula::Forall(..)) { "A" } else { "E" };
            let _ = write!(out, "{q} {x} . ");
            print_body(out, body);
        }
        Formula::ForallFamily { family, index_var, index_set, body } => {
            let _ = write!(out, "fam {family}[{index_var}] in {} . ", print_term(index_set));
            print_body(out, body);
        }
        Formula::ExistsIndex { index_var, index_set, body } | Formula::ForallIndex { index_var, index_set, body } => {
            let q = if matches!(phi, Formula::ExistsIndex { .. }) { "E" } else { "A" };
            let _ = write!(out, "{q} {index_var} in {} . ", print_term(index_set));
            print_body(out, body);
        }
    }
}

fn print_body(out: &mut String, body: &Formula) {
    if precedence(body) < 4 {
        out.push('(');
        print_into(out, body, true);
        out.push(')');
    } else {
        print_into(out, body, true);
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

/// Contents of a `.fast` file: one formula, comments and trailing whitespace
/// ignored.
pub fn parse_fast_file(src: &str) -> Result<Formula, ParseError> {
    parse_formula(src)
}
