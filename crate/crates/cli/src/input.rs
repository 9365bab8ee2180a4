//! Reading input files and inline arguments.

use std::collections::BTreeSet;
use std::fs;
use std::io::Read;
use std::path::Path;

use omegalab::kernel::{parse_derivation, parse_sequent, Derivation, Sequent};
use omegalab::syntax::{parse_abstract, parse_formula, parse_term, Abstract, Formula, Term};
use omegalab::{Error, ParseError};

use crate::report::CliError;

/// Reads a path, or standard input for `-`.
pub fn read(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn located(what: &str, e: ParseError) -> CliError {
    CliError::Parse { origin: what.to_string(), error: e }
}

pub fn lift(what: &str, e: Error) -> CliError {
    match e {
        Error::Parse(p) => located(what, p),
        other => CliError::Core(other),
    }
}

pub struct Ctx {
    pub constants: BTreeSet<String>,
}

impl Ctx {
    pub fn derivation_file(&self, path: &Path) -> Result<Derivation, CliError> {
        let src = read(path)?;
        parse_derivation(&src, &self.constants).map_err(|e| located(&path.display().to_string(), e))
    }

    pub fn sequent_file(&self, path: &Path) -> Result<Sequent, CliError> {
        let src = read(path)?;
        parse_sequent(&src, &self.constants).map_err(|e| located(&path.display().to_string(), e))
    }

    pub fn formula_file(&self, path: &Path) -> Result<Formula, CliError> {
        let src = read(path)?;
        parse_formula(&src, &self.constants).map_err(|e| located(&path.display().to_string(), e))
    }

    pub fn formula(&self, flag: &str, src: &str) -> Result<Formula, CliError> {
        parse_formula(src, &self.constants).map_err(|e| located(flag, e))
    }

    pub fn sequent(&self, flag: &str, src: &str) -> Result<Sequent, CliError> {
        parse_sequent(src, &self.constants).map_err(|e| located(flag, e))
    }

    pub fn term(&self, flag: &str, src: &str) -> Result<Term, CliError> {
        parse_term(src, &self.constants).map_err(|e| located(flag, e))
    }

    pub fn abstract_(&self, flag: &str, src: &str) -> Result<Abstract, CliError> {
        parse_abstract(src, &self.constants).map_err(|e| located(flag, e))
    }

    /// A `;`-separated formula list; an empty string is the empty set.
    pub fn formula_list(&self, flag: &str, src: &str) -> Result<Vec<Formula>, CliError> {
        split(src, ';').into_iter().map(|s| self.formula(flag, s)).collect()
    }

    pub fn formula_set(&self, flag: &str, src: &str) -> Result<BTreeSet<Formula>, CliError> {
        Ok(self.formula_list(flag, src)?.into_iter().collect())
    }

    /// A `,`-separated term list; commas inside parentheses belong to the term.
    pub fn term_list(&self, flag: &str, src: &str) -> Result<Vec<Term>, CliError> {
        split(src, ',').into_iter().map(|s| self.term(flag, s)).collect()
    }
}

/// Splits on `sep` outside parentheses, dropping empty pieces.
pub fn split(src: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in src.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&src[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&src[start..]);
    out.into_iter().map(str::trim).filter(|s| !s.is_empty()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_respects_parentheses() {
        assert_eq!(split("a, f(b, c) ,s(0)", ','), ["a", "f(b, c)", "s(0)"]);
        assert_eq!(split("p; q -> r;", ';'), ["p", "q -> r"]);
        assert!(split("  ", ';').is_empty());
    }
}
