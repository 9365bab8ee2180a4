//! Recursive-descent parser for the concrete syntax.
//!
//! ```text
//! formula ::= or ('->' formula)?
//! or      ::= and ('|' or)?
//! and     ::= unary ('&' and)?
//! unary   ::= ('all'|'ex') x '.' formula | ('All'|'Ex') X '.' formula
//!           | '(' formula ')' | 'bot' | 'top' | X '(' term ')'
//!           | p | p '(' terms ')' | term '=' term
//! ```
//!
//! Bare lowercase identifiers in term position are variables unless they are
//! declared constants; digit strings and `*` are always constants.

use std::collections::BTreeSet;

use super::formula::{Abstract, Formula, Quant, SetRef};
use super::term::Term;
use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Num(String),
    Star,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Dot,
    Amp,
    Bar,
    Arrow,
    Turnstile,
    Eq,
    Backslash,
    Eof,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut adv = 1;
        let tok = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => None,
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            '.' => Some(Tok::Dot),
            '&' => Some(Tok::Amp),
            '*' => Some(Tok::Star),
            '=' => Some(Tok::Eq),
            '\\' => Some(Tok::Backslash),
            '|' if chars.get(i + 1) == Some(&'-') => {
                adv = 2;
                Some(Tok::Turnstile)
            }
            '|' => Some(Tok::Bar),
            '-' if chars.get(i + 1) == Some(&'>') => {
                adv = 2;
                Some(Tok::Arrow)
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i + adv < chars.len() && chars[i + adv].is_ascii_digit() {
                    adv += 1;
                }
                Some(Tok::Num(chars[start..start + adv].iter().collect()))
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i + adv < chars.len() && (chars[i + adv].is_ascii_alphanumeric() || chars[i + adv] == '_' || chars[i + adv] == '\'') {
                    adv += 1;
                }
                Some(Tok::Ident(chars[start..start + adv].iter().collect()))
            }
            other => {
                return Err(ParseError { line, col, message: format!("unexpected character {other:?}") });
            }
        };
        if let Some(tok) = tok {
            out.push(Token { tok, line: l0, col: c0 });
        }
        i += adv;
        col += adv;
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

const KEYWORDS: [&str; 6] = ["all", "ex", "All", "Ex", "bot", "top"];

fn is_upper(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
    pub constants: BTreeSet<String>,
    terms: Vec<String>,
    sets: Vec<String>,
}

impl Parser {
    pub fn new(src: &str, constants: &BTreeSet<String>) -> Result<Parser, ParseError> {
        Ok(Parser { toks: lex(src)?, pos: 0, constants: constants.clone(), terms: Vec::new(), sets: Vec::new() })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError { line: t.line, col: t.col, message: message.into() }
    }

    pub fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {want:?}, found {:?}", self.peek())))
        }
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub fn finish(&self) -> Result<(), ParseError> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected trailing {:?}", self.peek())))
        }
    }

    /// Consumes `const c d ...` lines at the current position.
    pub fn directives(&mut self) {
        while matches!(self.peek(), Tok::Ident(k) if k == "const") {
            let line = self.toks[self.pos].line;
            self.bump();
            while self.toks[self.pos].line == line {
                match self.peek().clone() {
                    Tok::Ident(c) | Tok::Num(c) => {
                        self.constants.insert(c);
                        self.bump();
                    }
                    _ => break,
                }
            }
        }
    }

    pub fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            other => Err(self.error(format!("expected identifier, found {other:?}"))),
        }
    }

    pub fn term_var(&mut self) -> Result<String, ParseError> {
        let s = self.ident()?;
        if is_upper(&s) {
            return Err(self.error(format!("term variable {s} must start lowercase")));
        }
        Ok(s)
    }

    pub fn set_var(&mut self) -> Result<String, ParseError> {
        let s = self.ident()?;
        if !is_upper(&s) {
            return Err(self.error(format!("set variable {s} must start uppercase")));
        }
        Ok(s)
    }

    fn resolve(&self, name: &str) -> Term {
        if let Some(k) = self.terms.iter().rposition(|n| n == name) {
            Term::Bound(self.terms.len() - 1 - k)
        } else if self.constants.contains(name) {
            Term::constant(name)
        } else {
            Term::var(name)
        }
    }

    fn term_args(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut args = vec![self.term()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.term()?);
        }
        self.expect(Tok::RParen)?;
        Ok(args)
    }

    pub fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Term::constant(n))
            }
            Tok::Star => {
                self.bump();
                Ok(Term::constant("*"))
            }
            Tok::Ident(_) => {
                let name = self.term_var()?;
                if *self.peek() == Tok::LParen {
                    Ok(Term::app(name, self.term_args()?))
                } else {
                    Ok(self.resolve(&name))
                }
            }
            other => Err(self.error(format!("expected term, found {other:?}"))),
        }
    }

    pub fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            return Ok(Formula::imp(lhs, self.formula()?));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.conjunction()?;
        if *self.peek() == Tok::Bar {
            self.bump();
            return Ok(Formula::or(lhs, self.disjunction()?));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if *self.peek() == Tok::Amp {
            self.bump();
            return Ok(Formula::and(lhs, self.conjunction()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(k) if k == "bot" => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Ident(k) if k == "top" => {
                self.bump();
                Ok(Formula::top())
            }
            Tok::Ident(k) if k == "all" || k == "ex" => {
                self.bump();
                let q = if k == "all" { Quant::All } else { Quant::Ex };
                let x = self.term_var()?;
                self.expect(Tok::Dot)?;
                self.terms.push(x);
                let body = self.formula();
                self.terms.pop();
                Ok(Formula::Quant(q, Box::new(body?)))
            }
            Tok::Ident(k) if k == "All" || k == "Ex" => {
                self.bump();
                let q = if k == "All" { Quant::All } else { Quant::Ex };
                let x = self.set_var()?;
                self.expect(Tok::Dot)?;
                self.sets.push(x);
                let body = self.formula();
                self.sets.pop();
                Ok(Formula::SetQuant(q, Box::new(body?)))
            }
            Tok::Ident(name) if is_upper(&name) => {
                self.bump();
                let args = self.term_args()?;
                if args.len() != 1 {
                    return Err(self.error(format!("set atom {name} takes exactly one argument")));
                }
                let head = match self.sets.iter().rposition(|n| *n == name) {
                    Some(k) => SetRef::Bound(self.sets.len() - 1 - k),
                    None => SetRef::Free(name),
                };
                Ok(Formula::SetAtom(head, args.into_iter().next().expect("one argument")))
            }
            Tok::Ident(name) if *self.peek_at(1) == Tok::LParen => {
                let t = self.term()?;
                if *self.peek() == Tok::Eq {
                    self.bump();
                    return Ok(Formula::eq(t, self.term()?));
                }
                match t {
                    Term::App(_, args) => Ok(Formula::Pred(name, args)),
                    _ => unreachable!("application parsed"),
                }
            }
            Tok::Ident(name) if *self.peek_at(1) != Tok::Eq => {
                self.term_var()?;
                Ok(Formula::prop(name))
            }
            Tok::Ident(_) | Tok::Num(_) | Tok::Star => {
                let l = self.term()?;
                self.expect(Tok::Eq)?;
                Ok(Formula::eq(l, self.term()?))
            }
            other => Err(self.error(format!("expected formula, found {other:?}"))),
        }
    }

    /// `\x. φ`
    pub fn abstract_(&mut self) -> Result<Abstract, ParseError> {
        self.expect(Tok::Backslash)?;
        let x = self.term_var()?;
        self.expect(Tok::Dot)?;
        self.terms.push(x);
        let body = self.formula();
        self.terms.pop();
        Ok(Abstract::from_open_body(body?))
    }

    /// `φ1, ..., φk |- ψ?`
    pub fn sequent(&mut self) -> Result<(Vec<Formula>, Option<Formula>), ParseError> {
        let mut ant = Vec::new();
        if *self.peek() != Tok::Turnstile {
            ant.push(self.formula()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                ant.push(self.formula()?);
            }
        }
        self.expect(Tok::Turnstile)?;
        let suc = match self.peek() {
            Tok::Eof | Tok::RBracket => None,
            _ => Some(self.formula()?),
        };
        Ok((ant, suc))
    }
}

fn whole<T>(src: &str, constants: &BTreeSet<String>, f: impl FnOnce(&mut Parser) -> Result<T, ParseError>) -> Result<T, ParseError> {
    let mut p = Parser::new(src, constants)?;
    p.directives();
    let v = f(&mut p)?;
    p.finish()?;
    Ok(v)
}

pub fn parse_term(src: &str, constants: &BTreeSet<String>) -> Result<Term, ParseError> {
    whole(src, constants, Parser::term)
}

pub fn parse_formula(src: &str, constants: &BTreeSet<String>) -> Result<Formula, ParseError> {
    whole(src, constants, Parser::formula)
}

pub fn parse_abstract(src: &str, constants: &BTreeSet<String>) -> Result<Abstract, ParseError> {
    whole(src, constants, Parser::abstract_)
}

/// Parses a formula with no declared constants beyond numerals and `*`.
pub fn formula(src: &str) -> Result<Formula, ParseError> {
    parse_formula(src, &BTreeSet::new())
}

/// Parses a formula treating the listed names as constants.
pub fn formula_with(src: &str, constants: &[&str]) -> Result<Formula, ParseError> {
    parse_formula(src, &constants.iter().map(|s| s.to_string()).collect())
}
