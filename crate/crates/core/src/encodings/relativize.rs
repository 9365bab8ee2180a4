//! Relativization of first-order derivations to `Nn`.

use std::collections::{BTreeMap, BTreeSet};

use super::eq::flip;
use super::induction::induction_core;
use super::nd::{and_e, discharge, hyp, inst, mp};
use super::nn::{nn, nn_argument, nn_succ, nn_transport, nn_zero, rel};
use crate::error::{Error, Result};
use crate::kernel::build::{
    all_l, all_r, and_l, and_l_both, and_r, bot_l, bot_r, cut, ex_l, ex_r, imp_l, imp_r, or_l, or_r, widen,
};
use crate::kernel::{check, substitute_derivation, Binding, Calculus, Derivation, Rule, Sequent};
use crate::syntax::{Conn, Formula, Language, Term};

/// `Nn(x⃗), Γ^Nn ⇒ Π^Nn` for an endsequent `Γ ⇒ Π`, without side axioms.
pub fn relativized_sequent(s: &Sequent) -> Sequent {
    let mut ant: BTreeSet<Formula> = s.free_term_vars().iter().map(|v| nn(&Term::var(v.clone()))).collect();
    ant.extend(s.ant.iter().map(rel));
    Sequent { ant, suc: s.suc.as_ref().map(rel) }
}

struct Relativizer<'a> {
    lang: &'a Language,
    totality: BTreeMap<String, Derivation>,
}

impl Relativizer<'_> {
    /// `Nn(vars(t)), Γ ⇒ Nn(t)` where `Γ` holds equality axioms and the
    /// defining equations of the recursive symbols in `t`.
    fn closure(&mut self, t: &Term, known: &BTreeMap<Term, Derivation>) -> Result<Derivation> {
        if let Some(d) = known.get(t) {
            return Ok(d.clone());
        }
        match t {
            Term::Var(_) => Ok(hyp(&nn(t))),
            Term::App(f, args) if f == "0" && args.is_empty() => Ok(nn_zero()),
            Term::App(f, args) if f == "s" && args.len() == 1 => {
                let inner = self.closure(&args[0], known)?;
                Ok(discharge(nn_succ(&args[0]), inner))
            }
            Term::App(f, args) if args.len() == 1 && self.lang.pr.contains_key(f) => {
                let total = self.total(f)?;
                let inner = self.closure(&args[0], known)?;
                Ok(mp(inner, inst(total, &args[0])))
            }
            Term::App(f, _) => Err(Error::UnknownFunctionSymbol(f.clone())),
            Term::Bound(_) => unreachable!("open term"),
        }
    }

    /// `Γ, Def(f) ⇒ ∀x. Nn(x) → Nn(f(x))`.
    fn total(&mut self, f: &str) -> Result<Derivation> {
        if let Some(d) = self.totality.get(f) {
            return Ok(d.clone());
        }
        let sym = self.lang.pr[f].clone();
        let def = sym.definition();
        let app = |t: Term| Term::app(f, vec![t]);
        let x = Term::var("x");
        let a = Term::var("a");

        let mut known = BTreeMap::new();
        known.insert(a.clone(), hyp(&nn(&a)));
        known.insert(app(a.clone()), hyp(&nn(&app(a.clone()))));
        let n_step = self.closure(&sym.step_at(&a), &known)?;
        let rec = flip(inst(and_e(hyp(&def), 2), &a));
        let n_next = discharge(discharge(nn_transport(&sym.step_at(&a), &app(Term::succ(a.clone()))), rec), n_step);
        let step = all_r(imp_r(imp_r(n_next, &nn(&app(a.clone()))), &nn(&a)), "a");

        let n_base = self.closure(&sym.base, &BTreeMap::new())?;
        let base_eq = flip(and_e(hyp(&def), 1));
        let base = discharge(discharge(nn_transport(&sym.base, &app(Term::zero())), base_eq), n_base);

        let core = induction_core(&nn(&app(x)), "x")?;
        let d = mp(and_r(step, base), core);
        self.totality.insert(f.into(), d.clone());
        Ok(d)
    }

    fn node(&mut self, d: &Derivation) -> Result<Derivation> {
        let c = &d.conclusion;
        let t: Vec<Derivation> = d.premises.iter().map(|p| self.node(p)).collect::<Result<_>>()?;
        let r = |f: &Formula| rel(f);
        let out = match &d.rule {
            Rule::Id => Derivation::new(Rule::Id, Sequent { ant: c.ant.iter().map(r).collect(), suc: c.suc.as_ref().map(r) }, vec![]),
            Rule::BotL => bot_l(c.ant.iter().map(r), c.suc.as_ref().map(r)),
            Rule::BotR => bot_r(t[0].clone()),
            Rule::Cut(_) => cut(t[0].clone(), t[1].clone()),
            Rule::AndL { main, i } => and_l(t[0].clone(), &r(main), *i),
            Rule::AndR => and_r(t[0].clone(), t[1].clone()),
            Rule::OrL { main } => or_l(t[0].clone(), t[1].clone(), &r(main)),
            Rule::OrR(i) => {
                let Some(Formula::Bin(Conn::Or, a, b)) = c.suc.as_ref().map(r) else { unreachable!("checked") };
                or_r(t[0].clone(), *i, if *i == 1 { &b } else { &a })
            }
            Rule::ImpL { main } => imp_l(t[0].clone(), t[1].clone(), &r(main)),
            Rule::ImpR => {
                let Some(Formula::Bin(Conn::Imp, a, _)) = c.suc.as_ref().map(r) else { unreachable!("checked") };
                imp_r(t[0].clone(), &a)
            }
            Rule::AllL { main, t: term } => {
                let main = r(main);
                let inst_f = main.instantiate(term).expect("universal");
                let closure = self.closure(term, &BTreeMap::new())?;
                all_l(imp_l(closure, t[0].clone(), &inst_f), &main, term)
            }
            Rule::ExR(term) => {
                let q = c.suc.as_ref().map(r).expect("succedent");
                ex_r(and_r(self.closure(term, &BTreeMap::new())?, t[0].clone()), &q, term)
            }
            Rule::AllR(y) => {
                let yt = Term::var(y.clone());
                all_r(imp_r(widen(&t[0], &[nn(&yt)].into()), &nn(&yt)), y)
            }
            Rule::ExL { main, y } => {
                let main = r(main);
                let inst_f = main.instantiate(&Term::var(y.clone())).expect("existential");
                let Formula::Bin(_, g, body) = &inst_f else { unreachable!() };
                let p = widen(&t[0], &[(**g).clone(), (**body).clone()].into());
                ex_l(and_l_both(p, &inst_f), &main, y)
            }
            other => return Err(Error::LevelViolation(format!("rule {} is not first-order", other.name()))),
        };
        let out = discharge_stale(out, c)?;
        let target: BTreeSet<Formula> = out.conclusion.ant.union(&relativized_sequent(c).ant).cloned().collect();
        Ok(widen(&out, &target))
    }
}

/// Removes hypotheses `Nn(w)` for variables `w` that do not occur in `c` by
/// substituting `0` for `w` and cutting against `⇒ Nn(0)`.
fn discharge_stale(mut d: Derivation, c: &Sequent) -> Result<Derivation> {
    let fv = c.free_term_vars();
    let stale: Vec<String> = d
        .conclusion
        .ant
        .iter()
        .filter_map(nn_argument)
        .filter_map(|t| match t {
            Term::Var(w) if !fv.contains(&w) => Some(w),
            _ => None,
        })
        .collect();
    for w in stale {
        let s = substitute_derivation(&d, &Binding::Term(w, Term::zero()), Calculus::Lip(0))?;
        d = cut(nn_zero(), s);
    }
    Ok(d)
}

/// From an LI derivation of `Γ ⇒ Π` builds an LIP(0) derivation of
/// `Nn(x⃗), Γ^Nn ⇒ Π^Nn`, where `x⃗` are the free variables of the endsequent.
/// Witness terms get `Nn` proofs from `Nn(0)`, `Nn(x) ⇒ Nn(s(x))` and, for
/// recursive symbols of `lang`, their defining equations; these equations
/// and the equality axioms they need join the antecedent.
pub fn relativize_derivation(d: &Derivation, lang: &Language) -> Result<Derivation> {
    if let Some(v) = check(d, Calculus::Li).first() {
        return Err(Error::InvalidDerivation(v.to_string()));
    }
    let mut r = Relativizer { lang, totality: BTreeMap::new() };
    let out = r.node(d)?;
    if let Some(v) = check(&out, Calculus::Lip(0)).first() {
        return Err(Error::InvalidDerivation(v.to_string()));
    }
    debug_assert_eq!(out.conclusion.suc, d.conclusion.suc.as_ref().map(rel));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::build::axiom;
    use crate::syntax::formula;

    fn f(s: &str) -> Formula {
        formula(s).unwrap()
    }

    #[test]
    fn identity() {
        let d = axiom(&f("p(x)"));
        let out = relativize_derivation(&d, &Language::pa()).unwrap();
        assert_eq!(out.conclusion, Sequent::with_succedent([nn(&Term::var("x")), f("p(x)")], f("p(x)")));
    }

    #[test]
    fn successor_witness() {
        // all x. p(x) |- p(s(0))
        let main = f("all x. p(x)");
        let t = Term::succ(Term::zero());
        let d = all_l(axiom(&Formula::pred("p", vec![t.clone()])), &main, &t);
        let out = relativize_derivation(&d, &Language::pa()).unwrap();
        assert_eq!(out.conclusion, relativized_sequent(&d.conclusion));
        assert!(out.rules().iter().any(|r| matches!(r, Rule::All2R(_))));
    }

    #[test]
    fn quantifier_rules() {
        // ex x. all y. r(x, y) |- all y. ex x. r(x, y)
        let exa = f("ex x. all y. r(x, y)");
        let ally = f("all y. r(u, y)");
        let d = axiom(&f("r(u, v)"));
        let d = all_l(d, &ally, &Term::var("v"));
        let d = ex_r(d, &f("ex x. r(x, v)"), &Term::var("u"));
        let d = ex_l(d, &exa, "u");
        let d = all_r(d, "v");
        assert!(check(&d, Calculus::Li).is_empty());
        let out = relativize_derivation(&d, &Language::pa()).unwrap();
        assert_eq!(out.conclusion, relativized_sequent(&d.conclusion));
    }

    #[test]
    fn stale_witness_variable() {
        // all x. p(x) |- ex x. p(x) through the witness w
        let w = Term::var("w");
        let d = all_l(axiom(&f("p(w)")), &f("all x. p(x)"), &w);
        let d = ex_r(d, &f("ex x. p(x)"), &w);
        let out = relativize_derivation(&d, &Language::pa()).unwrap();
        assert_eq!(out.conclusion, relativized_sequent(&d.conclusion));
    }

    #[test]
    fn recursive_symbol() {
        // double(0) = 0, double(s(x)) = s(s(double(x)))
        let lang = Language::pa()
            .with_pr("double", Term::zero(), Term::succ(Term::succ(Term::var("y"))))
            .unwrap();
        let t = Term::app("double", vec![Term::succ(Term::zero())]);
        let d = all_l(axiom(&Formula::pred("p", vec![t.clone()])), &f("all x. p(x)"), &t);
        let out = relativize_derivation(&d, &lang).unwrap();
        let def = lang.pr["double"].definition();
        assert!(out.conclusion.ant.contains(&def));
        assert!(matches!(relativize_derivation(&d, &Language::pa()), Err(Error::UnknownFunctionSymbol(_))));
    }
}
