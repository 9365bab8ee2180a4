use std::collections::BTreeSet;
use std::fmt;

use super::{Calculus, Derivation, Rule, Sequent};
use crate::syntax::{Conn, Formula, Quant, Term};

/// A rule instance that does not match its schema. `path` lists premise
/// indices from the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub path: Vec<usize>,
    pub rule: &'static str,
    pub reason: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(ToString::to_string).collect();
        write!(f, "at /{} ({}): {}", path.join("/"), self.rule, self.reason)
    }
}

/// Checks every node of `d` against its schema in `calc`. An empty result
/// means the derivation is valid.
pub fn check(d: &Derivation, calc: Calculus) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    walk(d, calc, &mut path, &mut out);
    out
}

pub fn check_ok(d: &Derivation, calc: Calculus) -> bool {
    check(d, calc).is_empty()
}

fn walk(d: &Derivation, calc: Calculus, path: &mut Vec<usize>, out: &mut Vec<Violation>) {
    if let Err(reason) = node(d, calc) {
        out.push(Violation { path: path.clone(), rule: d.rule.name(), reason });
    }
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        walk(p, calc, path, out);
        path.pop();
    }
}

type Check = Result<(), String>;

fn ensure(cond: bool, reason: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(reason())
    }
}

fn same_ant(a: &Sequent, b: &Sequent) -> Check {
    ensure(a.ant == b.ant, || "premise antecedent differs from conclusion".into())
}

fn plus(set: &BTreeSet<Formula>, f: &Formula) -> BTreeSet<Formula> {
    let mut s = set.clone();
    s.insert(f.clone());
    s
}

/// The two possible side contexts of a left rule with main formula `main`.
fn contexts(c: &Sequent, main: &Formula) -> [BTreeSet<Formula>; 2] {
    let mut without = c.ant.clone();
    without.remove(main);
    [without, c.ant.clone()]
}

/// Matches one-premise left rules: premise is `new, Γ ⇒ Π` where the
/// conclusion is `main, Γ ⇒ Π`.
fn left_one(c: &Sequent, p: &Sequent, main: &Formula, new: &Formula) -> Check {
    ensure(c.ant.contains(main), || "main formula missing from conclusion".into())?;
    ensure(p.suc == c.suc, || "premise succedent differs from conclusion".into())?;
    ensure(contexts(c, main).iter().any(|g| plus(g, new) == p.ant), || "premise antecedent does not match rule".into())
}

fn closed_term(t: &Term) -> Check {
    ensure(t.is_locally_closed(), || "witness term has dangling indices".into())
}

fn is_term_eigen(y: &str) -> bool {
    y.chars().next().is_some_and(|c| c.is_ascii_lowercase())
}

fn is_set_eigen(y: &str) -> bool {
    y.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

fn node(d: &Derivation, calc: Calculus) -> Check {
    let c = &d.conclusion;
    let ps = &d.premises;
    ensure(ps.len() == d.rule.arity(), || format!("expected {} premises, found {}", d.rule.arity(), ps.len()))?;
    for f in c.formulas() {
        ensure(f.is_locally_closed(), || format!("formula {f} has dangling indices"))?;
        ensure(calc.admits(f), || format!("formula {f} (level {}) not admitted by {calc}", f.level()))?;
    }
    if d.rule.is_second_order() {
        ensure(calc != Calculus::Li, || "second-order rule in LI".into())?;
    }
    let suc = || c.suc.as_ref().ok_or_else(|| "rule needs a succedent".to_string());
    match &d.rule {
        Rule::Id => ensure(c.suc.as_ref().is_some_and(|s| c.ant.contains(s)), || "succedent not in antecedent".into()),
        Rule::BotL => ensure(c.ant.contains(&Formula::Bot), || "no bot in antecedent".into()),
        Rule::Cut(phi) => {
            ensure(ps[0].conclusion.ant == c.ant, || "left premise antecedent differs".into())?;
            ensure(ps[0].conclusion.suc.as_ref() == Some(phi), || "left premise does not prove cut formula".into())?;
            ensure(ps[1].conclusion.ant == plus(&c.ant, phi), || "right premise antecedent is not cut formula plus context".into())?;
            ensure(ps[1].conclusion.suc == c.suc, || "right premise succedent differs".into())
        }
        Rule::BotR => {
            ensure(c.suc == Some(Formula::Bot), || "conclusion succedent is not bot".into())?;
            same_ant(c, &ps[0].conclusion)?;
            ensure(ps[0].conclusion.suc.is_none(), || "premise succedent must be empty".into())
        }
        Rule::AndL { main, i } => match main {
            Formula::Bin(Conn::And, l, r) => {
                let new = match i {
                    1 => l,
                    2 => r,
                    _ => return Err(format!("conjunct index {i} not 1 or 2")),
                };
                left_one(c, &ps[0].conclusion, main, new)
            }
            _ => Err("main formula is not a conjunction".into()),
        },
        Rule::AndR => match suc()? {
            Formula::Bin(Conn::And, l, r) => {
                same_ant(c, &ps[0].conclusion)?;
                same_ant(c, &ps[1].conclusion)?;
                ensure(ps[0].conclusion.suc.as_ref() == Some(&**l), || "left premise succedent wrong".into())?;
                ensure(ps[1].conclusion.suc.as_ref() == Some(&**r), || "right premise succedent wrong".into())
            }
            _ => Err("succedent is not a conjunction".into()),
        },
        Rule::OrL { main } => match main {
            Formula::Bin(Conn::Or, l, r) => {
                ensure(c.ant.contains(main), || "main formula missing from conclusion".into())?;
                ensure(ps.iter().all(|p| p.conclusion.suc == c.suc), || "premise succedent differs from conclusion".into())?;
                let ok = contexts(c, main)
                    .iter()
                    .any(|g| plus(g, l) == ps[0].conclusion.ant && plus(g, r) == ps[1].conclusion.ant);
                ensure(ok, || "premise antecedents do not match rule".into())
            }
            _ => Err("main formula is not a disjunction".into()),
        },
        Rule::OrR(i) => match suc()? {
            Formula::Bin(Conn::Or, l, r) => {
                same_ant(c, &ps[0].conclusion)?;
                let want = match i {
                    1 => l,
                    2 => r,
                    _ => return Err(format!("disjunct index {i} not 1 or 2")),
                };
                ensure(ps[0].conclusion.suc.as_ref() == Some(&**want), || "premise succedent is not the chosen disjunct".into())
            }
            _ => Err("succedent is not a disjunction".into()),
        },
        Rule::ImpL { main } => match main {
            Formula::Bin(Conn::Imp, l, r) => {
                ensure(c.ant.contains(main), || "main formula missing from conclusion".into())?;
                ensure(ps[0].conclusion.suc.as_ref() == Some(&**l), || "left premise must prove the antecedent".into())?;
                ensure(ps[1].conclusion.suc == c.suc, || "right premise succedent differs".into())?;
                let ok = contexts(c, main)
                    .iter()
                    .any(|g| *g == ps[0].conclusion.ant && plus(g, r) == ps[1].conclusion.ant);
                ensure(ok, || "premise antecedents do not match rule".into())
            }
            _ => Err("main formula is not an implication".into()),
        },
        Rule::ImpR => match suc()? {
            Formula::Bin(Conn::Imp, l, r) => {
                ensure(ps[0].conclusion.ant == plus(&c.ant, l), || "premise antecedent must add the hypothesis".into())?;
                ensure(ps[0].conclusion.suc.as_ref() == Some(&**r), || "premise succedent wrong".into())
            }
            _ => Err("succedent is not an implication".into()),
        },
        Rule::AllL { main, t } => match main {
            Formula::Quant(Quant::All, _) => {
                closed_term(t)?;
                left_one(c, &ps[0].conclusion, main, &main.instantiate(t).expect("quantifier"))
            }
            _ => Err("main formula is not a universal".into()),
        },
        Rule::ExR(t) => match suc()? {
            q @ Formula::Quant(Quant::Ex, _) => {
                closed_term(t)?;
                same_ant(c, &ps[0].conclusion)?;
                ensure(ps[0].conclusion.suc == q.instantiate(t), || "premise is not the instance".into())
            }
            _ => Err("succedent is not an existential".into()),
        },
        Rule::AllR(y) => match suc()? {
            q @ Formula::Quant(Quant::All, _) => {
                ensure(is_term_eigen(y), || format!("{y} is not a term variable"))?;
                ensure(!c.free_term_vars().contains(y), || format!("eigenvariable {y} occurs free in conclusion"))?;
                same_ant(c, &ps[0].conclusion)?;
                ensure(ps[0].conclusion.suc == q.instantiate(&Term::var(y.clone())), || "premise is not the eigen-instance".into())
            }
            _ => Err("succedent is not a universal".into()),
        },
        Rule::ExL { main, y } => match main {
            Formula::Quant(Quant::Ex, _) => {
                ensure(is_term_eigen(y), || format!("{y} is not a term variable"))?;
                ensure(!c.free_term_vars().contains(y), || format!("eigenvariable {y} occurs free in conclusion"))?;
                left_one(c, &ps[0].conclusion, main, &main.instantiate(&Term::var(y.clone())).expect("quantifier"))
            }
            _ => Err("main formula is not an existential".into()),
        },
        Rule::All2L { main, tau } => match main {
            Formula::SetQuant(Quant::All, _) => {
                abstract_level(tau, calc)?;
                left_one(c, &ps[0].conclusion, main, &main.instantiate_set(tau).expect("quantifier"))
            }
            _ => Err("main formula is not a second-order universal".into()),
        },
        Rule::Ex2R(tau) => match suc()? {
            q @ Formula::SetQuant(Quant::Ex, _) => {
                abstract_level(tau, calc)?;
                same_ant(c, &ps[0].conclusion)?;
                ensure(ps[0].conclusion.suc == q.instantiate_set(tau), || "premise is not the instance".into())
            }
            _ => Err("succedent is not a second-order existential".into()),
        },
        Rule::All2R(y) => match suc()? {
            q @ Formula::SetQuant(Quant::All, _) => {
                ensure(is_set_eigen(y), || format!("{y} is not a set variable"))?;
                ensure(!c.free_set_vars().contains(y), || format!("eigenvariable {y} occurs free in conclusion"))?;
                same_ant(c, &ps[0].conclusion)?;
                let inst = q.instantiate_set(&crate::syntax::Abstract::set_var(y));
                ensure(ps[0].conclusion.suc == inst, || "premise is not the eigen-instance".into())
            }
            _ => Err("succedent is not a second-order universal".into()),
        },
        Rule::Ex2L { main, y } => match main {
            Formula::SetQuant(Quant::Ex, _) => {
                ensure(is_set_eigen(y), || format!("{y} is not a set variable"))?;
                ensure(!c.free_set_vars().contains(y), || format!("eigenvariable {y} occurs free in conclusion"))?;
                let inst = main.instantiate_set(&crate::syntax::Abstract::set_var(y)).expect("quantifier");
                left_one(c, &ps[0].conclusion, main, &inst)
            }
            _ => Err("main formula is not a second-order existential".into()),
        },
    }
}

fn abstract_level(tau: &crate::syntax::Abstract, calc: Calculus) -> Check {
    ensure(tau.open_body().max_loose_term(1).is_none(), || "abstract body has dangling indices".into())?;
    match calc {
        Calculus::Lip(n) => ensure(tau.level().within(n as i32), || format!("abstract {tau} (level {}) exceeds level {n}", tau.level())),
        _ => Ok(()),
    }
}
