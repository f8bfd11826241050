//! Datalog programs: syntax, fact loading and bottom-up evaluation.

mod ast;
pub mod csv;
mod eval;
mod parser;

pub use ast::{Atom, Pos, Program, Rule, Term};
pub use eval::{evaluate_seminaive, prepare_catalog, EvalStats, Evaluator};
pub use parser::{check_arities, parse_program, parse_program_with, parse_query, validate};
