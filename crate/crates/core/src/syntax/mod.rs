//! Terms, formulas, abstracts and their concrete syntax.

mod formula;
mod language;
pub mod parse;
mod print;
mod term;

pub use formula::{Abstract, Conn, Formula, Level, Quant, SetRef};
pub use language::{Language, PrSymbol};
pub use parse::{formula, formula_with, parse_abstract, parse_formula, parse_term};
pub use term::Term;
