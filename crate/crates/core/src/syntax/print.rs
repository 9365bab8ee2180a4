//! Concrete syntax output. Bound variables get readable names chosen to avoid
//! every free variable and symbol in scope, so printing then parsing gives the
//! same value back.

use std::collections::BTreeSet;
use std::fmt;

use super::formula::{Abstract, Conn, Formula, Quant, SetRef};
use super::term::Term;

const TERM_NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
const SET_NAMES: [&str; 6] = ["X", "Y", "Z", "U", "V", "W"];

struct Printer {
    avoid: BTreeSet<String>,
    terms: Vec<String>,
    sets: Vec<String>,
}

fn candidate(base: &[&str; 6], i: usize) -> String {
    let round = i / base.len();
    let stem = base[i % base.len()];
    if round == 0 {
        stem.to_string()
    } else {
        format!("{stem}{round}")
    }
}

impl Printer {
    fn for_formula(f: &Formula) -> Printer {
        let mut avoid = f.free_term_vars();
        avoid.extend(f.free_set_vars());
        let mut syms = BTreeSet::new();
        f.collect_functions(&mut syms);
        avoid.extend(syms.into_iter().map(|(s, _)| s));
        avoid.extend(f.predicates().into_iter().map(|(s, _)| s));
        Printer { avoid, terms: Vec::new(), sets: Vec::new() }
    }

    fn fresh(&self, base: &[&str; 6], stack: &[String]) -> String {
        (0..)
            .map(|i| candidate(base, i))
            .find(|n| !self.avoid.contains(n) && !stack.contains(n))
            .expect("unbounded candidate supply")
    }

    fn term(&self, t: &Term, out: &mut String) {
        match t {
            Term::Var(x) => out.push_str(x),
            Term::Bound(i) => match self.terms.len().checked_sub(i + 1) {
                Some(k) => out.push_str(&self.terms[k]),
                None => out.push_str(&format!("#{i}")),
            },
            Term::App(f, args) => {
                out.push_str(f);
                if !args.is_empty() {
                    out.push('(');
                    for (k, a) in args.iter().enumerate() {
                        if k > 0 {
                            out.push_str(", ");
                        }
                        self.term(a, out);
                    }
                    out.push(')');
                }
            }
        }
    }

    fn prec(f: &Formula) -> u8 {
        match f {
            Formula::Bin(Conn::Imp, l, r) if **l == Formula::Bot && **r == Formula::Bot => 4,
            Formula::Bin(Conn::Imp, ..) => 1,
            Formula::Bin(Conn::Or, ..) => 2,
            Formula::Bin(Conn::And, ..) => 3,
            Formula::Quant(..) | Formula::SetQuant(..) => 0,
            _ => 4,
        }
    }

    fn operand(&mut self, f: &Formula, min: u8, out: &mut String) {
        let p = Printer::prec(f);
        if p == 0 || p < min {
            out.push('(');
            self.formula(f, out);
            out.push(')');
        } else {
            self.formula(f, out);
        }
    }

    fn formula(&mut self, f: &Formula, out: &mut String) {
        match f {
            Formula::Bot => out.push_str("bot"),
            Formula::Pred(p, args) if p == "=" && args.len() == 2 => {
                self.term(&args[0], out);
                out.push_str(" = ");
                self.term(&args[1], out);
            }
            Formula::Pred(p, args) => self.term(&Term::App(p.clone(), args.clone()), out),
            Formula::SetAtom(x, t) => {
                match x {
                    SetRef::Free(n) => out.push_str(n),
                    SetRef::Bound(i) => match self.sets.len().checked_sub(i + 1) {
                        Some(k) => out.push_str(&self.sets[k]),
                        None => out.push_str(&format!("#S{i}")),
                    },
                }
                out.push('(');
                self.term(t, out);
                out.push(')');
            }
            _ if f.is_top() => out.push_str("top"),
            Formula::Bin(c, l, r) => {
                let (sym, p) = match c {
                    Conn::And => (" & ", 3),
                    Conn::Or => (" | ", 2),
                    Conn::Imp => (" -> ", 1),
                };
                // right-associative: the left operand needs strictly higher precedence
                self.operand(l, p + 1, out);
                out.push_str(sym);
                self.operand(r, p, out);
            }
            Formula::Quant(q, body) => {
                let name = self.fresh(&TERM_NAMES, &self.terms);
                out.push_str(if *q == Quant::All { "all " } else { "ex " });
                out.push_str(&name);
                out.push_str(". ");
                self.terms.push(name);
                self.formula(body, out);
                self.terms.pop();
            }
            Formula::SetQuant(q, body) => {
                let name = self.fresh(&SET_NAMES, &self.sets);
                out.push_str(if *q == Quant::All { "All " } else { "Ex " });
                out.push_str(&name);
                out.push_str(". ");
                self.sets.push(name);
                self.formula(body, out);
                self.sets.pop();
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = Printer { avoid: BTreeSet::new(), terms: Vec::new(), sets: Vec::new() };
        let mut out = String::new();
        p.term(self, &mut out);
        f.write_str(&out)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut p = Printer::for_formula(self);
        let mut out = String::new();
        p.formula(self, &mut out);
        f.write_str(&out)
    }
}

impl fmt::Display for Abstract {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.open_body();
        let mut p = Printer::for_formula(body);
        let name = p.fresh(&TERM_NAMES, &[]);
        p.terms.push(name.clone());
        let mut out = format!("\\{name}. ");
        p.formula(body, &mut out);
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_associativity() {
        let p = Formula::prop("p");
        let q = Formula::prop("q");
        let r = Formula::prop("r");
        assert_eq!(Formula::imp(p.clone(), Formula::imp(q.clone(), r.clone())).to_string(), "p -> q -> r");
        assert_eq!(Formula::imp(Formula::imp(p.clone(), q.clone()), r.clone()).to_string(), "(p -> q) -> r");
        assert_eq!(Formula::or(Formula::and(p.clone(), q.clone()), r.clone()).to_string(), "p & q | r");
        assert_eq!(Formula::and(Formula::or(p, q), r).to_string(), "(p | q) & r");
    }

    #[test]
    fn bound_names_avoid_free_ones() {
        let f = Formula::all("a", &Formula::pred("p", vec![Term::var("a"), Term::var("x")]));
        assert_eq!(f.to_string(), "all y. p(y, x)");
    }

    #[test]
    fn top_and_equality() {
        assert_eq!(Formula::top().to_string(), "top");
        assert_eq!(Formula::eq(Term::zero(), Term::succ(Term::var("x"))).to_string(), "0 = s(x)");
        let tau = Abstract::new("z", &Formula::set_atom("Y", Term::var("z")));
        assert_eq!(tau.to_string(), "\\x. Y(x)");
    }
}
