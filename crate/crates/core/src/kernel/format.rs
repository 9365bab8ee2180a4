//! Derivation files: `(RULE {witness; ...} [φ1, φ2 |- ψ] premise...)`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{Derivation, Rule, Sequent};
use crate::error::ParseError;
use crate::syntax::parse::{Parser, Tok};
use crate::syntax::Formula;

fn witnesses(r: &Rule) -> Vec<String> {
    match r {
        Rule::Id | Rule::BotL | Rule::BotR | Rule::AndR | Rule::ImpR => vec![],
        Rule::Cut(f) => vec![f.to_string()],
        Rule::AndL { main, i } => vec![main.to_string(), i.to_string()],
        Rule::OrL { main } | Rule::ImpL { main } => vec![main.to_string()],
        Rule::OrR(i) => vec![i.to_string()],
        Rule::AllL { main, t } => vec![main.to_string(), t.to_string()],
        Rule::AllR(y) | Rule::All2R(y) => vec![y.clone()],
        Rule::ExL { main, y } | Rule::Ex2L { main, y } => vec![main.to_string(), y.clone()],
        Rule::ExR(t) => vec![t.to_string()],
        Rule::All2L { main, tau } => vec![main.to_string(), tau.to_string()],
        Rule::Ex2R(tau) => vec![tau.to_string()],
    }
}

fn node(d: &Derivation, indent: usize, out: &mut String) {
    let _ = write!(out, "{:indent$}({} {{{}}} [{}]", "", d.rule.name(), witnesses(&d.rule).join("; "), d.conclusion);
    for p in &d.premises {
        out.push('\n');
        node(p, indent + 2, out);
    }
    out.push(')');
}

fn is_numeral(s: &str) -> bool {
    s == "*" || s.chars().all(|c| c.is_ascii_digit())
}

/// Nullary function symbols that need a `const` declaration to read back.
fn declared_constants(d: &Derivation) -> BTreeSet<String> {
    let mut syms = BTreeSet::new();
    let mut visit = |f: &Formula| f.collect_functions(&mut syms);
    fn walk(d: &Derivation, visit: &mut dyn FnMut(&Formula)) {
        d.conclusion.formulas().for_each(&mut *visit);
        match &d.rule {
            Rule::AllL { t, .. } | Rule::ExR(t) => visit(&Formula::pred("w", vec![t.clone()])),
            Rule::All2L { tau, .. } | Rule::Ex2R(tau) => visit(tau.open_body()),
            _ => {}
        }
        d.premises.iter().for_each(|p| walk(p, visit));
    }
    walk(d, &mut visit);
    syms.into_iter().filter(|(s, a)| *a == 0 && !is_numeral(s)).map(|(s, _)| s).collect()
}

/// Serializes a derivation, one node per line, premises indented.
pub fn print_derivation(d: &Derivation) -> String {
    let mut out = String::new();
    let consts = declared_constants(d);
    if !consts.is_empty() {
        let _ = writeln!(out, "const {}", consts.into_iter().collect::<Vec<_>>().join(" "));
    }
    node(d, 0, &mut out);
    out.push('\n');
    out
}

fn index(p: &mut Parser) -> Result<u8, ParseError> {
    match p.peek().clone() {
        Tok::Num(n) => {
            p.bump();
            n.parse().map_err(|_| p.error("index out of range"))
        }
        other => Err(p.error(format!("expected index, found {other:?}"))),
    }
}

fn semi(p: &mut Parser) -> Result<(), ParseError> {
    p.expect(Tok::Semi)
}

fn rule(p: &mut Parser) -> Result<Rule, ParseError> {
    let name = p.ident()?;
    p.expect(Tok::LBrace)?;
    let r = match name.as_str() {
        "Id" => Rule::Id,
        "BotL" => Rule::BotL,
        "BotR" => Rule::BotR,
        "AndR" => Rule::AndR,
        "ImpR" => Rule::ImpR,
        "Cut" => Rule::Cut(p.formula()?),
        "AndL" => {
            let main = p.formula()?;
            semi(p)?;
            Rule::AndL { main, i: index(p)? }
        }
        "OrL" => Rule::OrL { main: p.formula()? },
        "ImpL" => Rule::ImpL { main: p.formula()? },
        "OrR" => Rule::OrR(index(p)?),
        "AllL" => {
            let main = p.formula()?;
            semi(p)?;
            Rule::AllL { main, t: p.term()? }
        }
        "AllR" => Rule::AllR(p.term_var()?),
        "ExL" => {
            let main = p.formula()?;
            semi(p)?;
            Rule::ExL { main, y: p.term_var()? }
        }
        "ExR" => Rule::ExR(p.term()?),
        "All2L" => {
            let main = p.formula()?;
            semi(p)?;
            Rule::All2L { main, tau: p.abstract_()? }
        }
        "All2R" => Rule::All2R(p.set_var()?),
        "Ex2L" => {
            let main = p.formula()?;
            semi(p)?;
            Rule::Ex2L { main, y: p.set_var()? }
        }
        "Ex2R" => Rule::Ex2R(p.abstract_()?),
        other => return Err(p.error(format!("unknown rule {other}"))),
    };
    p.expect(Tok::RBrace)?;
    Ok(r)
}

fn sequent(p: &mut Parser) -> Result<Sequent, ParseError> {
    p.expect(Tok::LBracket)?;
    let (ant, suc) = p.sequent()?;
    p.expect(Tok::RBracket)?;
    Ok(Sequent::new(ant, suc))
}

fn derivation(p: &mut Parser) -> Result<Derivation, ParseError> {
    p.expect(Tok::LParen)?;
    let rule = rule(p)?;
    let conclusion = sequent(p)?;
    let mut premises = Vec::new();
    while *p.peek() == Tok::LParen {
        premises.push(derivation(p)?);
    }
    p.expect(Tok::RParen)?;
    Ok(Derivation { rule, conclusion, premises })
}

/// Reads a derivation; `const` lines at the top declare extra constants.
pub fn parse_derivation(src: &str, constants: &BTreeSet<String>) -> Result<Derivation, ParseError> {
    let mut p = Parser::new(src, constants)?;
    p.directives();
    let d = derivation(&mut p)?;
    p.finish()?;
    Ok(d)
}

/// Reads `φ1, ..., φk |- ψ` (the succedent may be empty).
pub fn parse_sequent(src: &str, constants: &BTreeSet<String>) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(src, constants)?;
    p.directives();
    let (ant, suc) = p.sequent()?;
    p.finish()?;
    Ok(Sequent::new(ant, suc))
}
