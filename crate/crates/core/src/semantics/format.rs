//! Structure files.
//!
//! ```text
//! algebra three-chain      # or: chain N, boolean K
//! constant *               # one line per symbol
//! function s 1
//! depth 1                  # closed terms up to this depth (default 0)
//! p * -> 0.5               # predicate rows: name, argument terms, value label
//! ```
//! The domain is always full. Missing predicate rows take the value `⊥`.

use std::collections::BTreeSet;

use super::Structure;
use crate::error::{Error, ParseError, Result};
use crate::lattice::HeytingAlgebra;
use crate::syntax::{parse_term, Language};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse(ParseError { line, col: 1, message: message.into() })
}

pub fn algebra_by_name(words: &[&str]) -> Option<HeytingAlgebra> {
    match words {
        ["three-chain"] => Some(HeytingAlgebra::three_chain()),
        ["chain", n] => n.parse().ok().filter(|&n| n > 0).map(HeytingAlgebra::chain),
        ["boolean", k] => k.parse().ok().filter(|&k| k < 6).map(HeytingAlgebra::boolean),
        _ => None,
    }
}

pub fn parse_structure(src: &str) -> Result<Structure> {
    let mut algebra = None;
    let mut lang = Language::new();
    let mut depth = 0;
    let mut rows = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        let words: Vec<&str> = text.split_whitespace().collect();
        match words.as_slice() {
            [] => {}
            ["algebra", rest @ ..] => {
                algebra = Some(algebra_by_name(rest).ok_or_else(|| err(line, "unknown algebra"))?);
            }
            ["constant", names @ ..] => {
                for n in names {
                    lang = lang.with_function(n, 0);
                }
            }
            ["function", name, arity] => {
                let k = arity.parse().map_err(|_| err(line, "bad arity"))?;
                lang = lang.with_function(name, k);
            }
            ["depth", d] => depth = d.parse().map_err(|_| err(line, "bad depth"))?,
            [_, .., "->", _] => rows.push((line, words.clone())),
            _ => return Err(err(line, format!("cannot read `{text}`"))),
        }
    }
    let algebra = algebra.ok_or_else(|| err(1, "missing `algebra` line"))?;
    let constants: BTreeSet<String> = lang.functions.iter().filter(|(_, &k)| k == 0).map(|(n, _)| n.clone()).collect();
    let mut s = Structure::full(algebra, &lang, depth)?;
    for (line, words) in rows {
        let (p, rest) = words.split_first().expect("row");
        let (value, args) = rest.split_last().expect("row");
        let args = &args[..args.len() - 1];
        let terms = args
            .iter()
            .map(|a| parse_term(a, &constants).map_err(|e| err(line, e.message)))
            .collect::<Result<Vec<_>>>()?;
        let h = s.algebra.index_of(value).ok_or_else(|| err(line, format!("unknown algebra element {value}")))?;
        s.set_predicate(p, &terms, h).map_err(|e| err(line, e.to_string()))?;
    }
    Ok(s)
}
