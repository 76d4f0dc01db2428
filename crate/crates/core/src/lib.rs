//! Tooling for a finitely axiomatized set theory with family quantifiers:
//! syntax, hereditarily finite literals, the axiom list, a Hilbert-style proof
//! kernel and a brute-force finite-model evaluator.

pub mod ast;
pub mod axioms;
pub mod expander;
pub mod gen;
pub mod hf;
pub mod kernel;
pub mod parser;
pub mod semantics;
pub mod soundness;

pub use ast::{Formula, Index, Position, Term, VarName};
pub use hf::HfSet;
pub use parser::{parse_formula, print_formula, ParseError};
