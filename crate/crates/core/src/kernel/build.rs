//! Rule constructors that compute conclusions from premises. Two-premise
//! rules first weaken both premises to the union of their side contexts.

use std::collections::BTreeSet;

use super::{weaken, Derivation, Rule, Sequent};
use crate::syntax::{Abstract, Formula, Term};

fn ant(d: &Derivation) -> &BTreeSet<Formula> {
    &d.conclusion.ant
}

fn suc(d: &Derivation) -> Formula {
    d.conclusion.suc.clone().expect("premise must have a succedent")
}

fn without(set: &BTreeSet<Formula>, f: &Formula) -> BTreeSet<Formula> {
    let mut s = set.clone();
    s.remove(f);
    s
}

fn with(set: &BTreeSet<Formula>, f: &Formula) -> BTreeSet<Formula> {
    let mut s = set.clone();
    s.insert(f.clone());
    s
}

/// Weakens `d` so that its antecedent becomes exactly `target ⊇ ant(d)`.
pub fn widen(d: &Derivation, target: &BTreeSet<Formula>) -> Derivation {
    let extra: BTreeSet<Formula> = target.difference(ant(d)).cloned().collect();
    weaken(d, &extra)
}

/// `Γ, φ ⇒ φ`.
pub fn id(ctx: impl IntoIterator<Item = Formula>, phi: &Formula) -> Derivation {
    let mut a: BTreeSet<Formula> = ctx.into_iter().collect();
    a.insert(phi.clone());
    Derivation::new(Rule::Id, Sequent { ant: a, suc: Some(phi.clone()) }, vec![])
}

/// `φ ⇒ φ`.
pub fn axiom(phi: &Formula) -> Derivation {
    id([], phi)
}

/// `⊥, Γ ⇒ Π`.
pub fn bot_l(ctx: impl IntoIterator<Item = Formula>, suc: Option<Formula>) -> Derivation {
    let mut a: BTreeSet<Formula> = ctx.into_iter().collect();
    a.insert(Formula::Bot);
    Derivation::new(Rule::BotL, Sequent { ant: a, suc }, vec![])
}

pub fn bot_r(d: Derivation) -> Derivation {
    Derivation::new(Rule::BotR, Sequent { ant: ant(&d).clone(), suc: Some(Formula::Bot) }, vec![d])
}

/// One-premise left rule: removes `new` from the premise antecedent and adds `main`.
fn left(rule: Rule, d: Derivation, new: &Formula) -> Derivation {
    let main = rule.left_main().expect("left rule").clone();
    let conclusion = Sequent { ant: with(&without(ant(&d), new), &main), suc: d.conclusion.suc.clone() };
    Derivation::new(rule, conclusion, vec![d])
}

pub fn and_l(d: Derivation, main: &Formula, i: u8) -> Derivation {
    let new = match (main, i) {
        (Formula::Bin(_, l, _), 1) => (**l).clone(),
        (Formula::Bin(_, _, r), _) => (**r).clone(),
        _ => panic!("and_l on non-conjunction"),
    };
    left(Rule::AndL { main: main.clone(), i }, d, &new)
}

/// Both conjuncts of `main` from the premise antecedent are replaced by `main`.
pub fn and_l_both(d: Derivation, main: &Formula) -> Derivation {
    let (l, r) = match main {
        Formula::Bin(_, l, r) => ((**l).clone(), (**r).clone()),
        _ => panic!("and_l_both on non-conjunction"),
    };
    let d = if ant(&d).contains(&r) { and_l(d, main, 2) } else { d };
    if ant(&d).contains(&l) {
        and_l(d, main, 1)
    } else {
        d
    }
}

pub fn and_r(d1: Derivation, d2: Derivation) -> Derivation {
    let g: BTreeSet<Formula> = ant(&d1).union(ant(&d2)).cloned().collect();
    let (d1, d2) = (widen(&d1, &g), widen(&d2, &g));
    let conj = Formula::and(suc(&d1), suc(&d2));
    Derivation::new(Rule::AndR, Sequent { ant: g, suc: Some(conj) }, vec![d1, d2])
}

pub fn or_l(d1: Derivation, d2: Derivation, main: &Formula) -> Derivation {
    let (l, r) = match main {
        Formula::Bin(_, l, r) => ((**l).clone(), (**r).clone()),
        _ => panic!("or_l on non-disjunction"),
    };
    let g: BTreeSet<Formula> = without(ant(&d1), &l).union(&without(ant(&d2), &r)).cloned().collect();
    let d1 = widen(&d1, &with(&g, &l));
    let d2 = widen(&d2, &with(&g, &r));
    let suc = d1.conclusion.suc.clone();
    Derivation::new(Rule::OrL { main: main.clone() }, Sequent { ant: with(&g, main), suc }, vec![d1, d2])
}

/// `Γ ⇒ φ_i` to `Γ ⇒ φ1 ∨ φ2`; `other` is the disjunct not proved.
pub fn or_r(d: Derivation, i: u8, other: &Formula) -> Derivation {
    let proved = suc(&d);
    let disj = if i == 1 { Formula::or(proved, other.clone()) } else { Formula::or(other.clone(), proved) };
    Derivation::new(Rule::OrR(i), Sequent { ant: ant(&d).clone(), suc: Some(disj) }, vec![d])
}

/// `Γ ⇒ φ1` and `φ2, Γ ⇒ Π` to `φ1 → φ2, Γ ⇒ Π`.
pub fn imp_l(d1: Derivation, d2: Derivation, main: &Formula) -> Derivation {
    let r = match main {
        Formula::Bin(_, _, r) => (**r).clone(),
        _ => panic!("imp_l on non-implication"),
    };
    let g: BTreeSet<Formula> = ant(&d1).union(&without(ant(&d2), &r)).cloned().collect();
    let d1 = widen(&d1, &g);
    let d2 = widen(&d2, &with(&g, &r));
    let suc = d2.conclusion.suc.clone();
    Derivation::new(Rule::ImpL { main: main.clone() }, Sequent { ant: with(&g, main), suc }, vec![d1, d2])
}

/// Discharges `hyp` from the premise antecedent.
pub fn imp_r(d: Derivation, hyp: &Formula) -> Derivation {
    let imp = Formula::imp(hyp.clone(), suc(&d));
    let a = without(ant(&d), hyp);
    let d = widen(&d, &with(&a, hyp));
    Derivation::new(Rule::ImpR, Sequent { ant: a, suc: Some(imp) }, vec![d])
}

/// `Γ ⇒ φ` and `φ, Γ ⇒ Π` to `Γ ⇒ Π`.
pub fn cut(d1: Derivation, d2: Derivation) -> Derivation {
    let phi = suc(&d1);
    let g: BTreeSet<Formula> = ant(&d1).union(&without(ant(&d2), &phi)).cloned().collect();
    let d1 = widen(&d1, &g);
    let d2 = widen(&d2, &with(&g, &phi));
    let suc = d2.conclusion.suc.clone();
    Derivation::new(Rule::Cut(phi), Sequent { ant: g, suc }, vec![d1, d2])
}

pub fn all_l(d: Derivation, main: &Formula, t: &Term) -> Derivation {
    let inst = main.instantiate(t).expect("all_l on non-quantifier");
    left(Rule::AllL { main: main.clone(), t: t.clone() }, d, &inst)
}

/// Generalizes the eigenvariable `y` of the premise succedent.
pub fn all_r(d: Derivation, y: &str) -> Derivation {
    let q = Formula::all(y, &suc(&d));
    Derivation::new(Rule::AllR(y.into()), Sequent { ant: ant(&d).clone(), suc: Some(q) }, vec![d])
}

pub fn ex_l(d: Derivation, main: &Formula, y: &str) -> Derivation {
    let inst = main.instantiate(&Term::var(y)).expect("ex_l on non-quantifier");
    left(Rule::ExL { main: main.clone(), y: y.into() }, d, &inst)
}

pub fn ex_r(d: Derivation, q: &Formula, t: &Term) -> Derivation {
    Derivation::new(Rule::ExR(t.clone()), Sequent { ant: ant(&d).clone(), suc: Some(q.clone()) }, vec![d])
}

pub fn all2_l(d: Derivation, main: &Formula, tau: &Abstract) -> Derivation {
    let inst = main.instantiate_set(tau).expect("all2_l on non-quantifier");
    left(Rule::All2L { main: main.clone(), tau: tau.clone() }, d, &inst)
}

pub fn all2_r(d: Derivation, y: &str) -> Derivation {
    let q = Formula::all2(y, &suc(&d));
    Derivation::new(Rule::All2R(y.into()), Sequent { ant: ant(&d).clone(), suc: Some(q) }, vec![d])
}

pub fn ex2_l(d: Derivation, main: &Formula, y: &str) -> Derivation {
    let inst = main.instantiate_set(&Abstract::set_var(y)).expect("ex2_l on non-quantifier");
    left(Rule::Ex2L { main: main.clone(), y: y.into() }, d, &inst)
}

pub fn ex2_r(d: Derivation, q: &Formula, tau: &Abstract) -> Derivation {
    Derivation::new(Rule::Ex2R(tau.clone()), Sequent { ant: ant(&d).clone(), suc: Some(q.clone()) }, vec![d])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check, Calculus};
    use crate::syntax::formula;

    fn f(s: &str) -> Formula {
        formula(s).unwrap()
    }

    #[test]
    fn modus_ponens_by_cut() {
        // p, p -> q |- q through a cut on q
        let main = f("p -> q");
        let d = imp_l(axiom(&f("p")), axiom(&f("q")), &main);
        let d = cut(d, axiom(&f("q")));
        assert!(check(&d, Calculus::Li).is_empty(), "{:?}", check(&d, Calculus::Li));
        assert_eq!(d.conclusion, Sequent::with_succedent([f("p"), main], f("q")));
    }

    #[test]
    fn conjunction_commutes() {
        let main = f("p & q");
        let d = and_r(axiom(&f("q")), axiom(&f("p")));
        let d = and_l_both(d, &main);
        let d = imp_r(d, &main);
        assert!(check(&d, Calculus::Li).is_empty(), "{:?}", check(&d, Calculus::Li));
        assert_eq!(d.conclusion.suc, Some(f("p & q -> q & p")));
        assert!(d.conclusion.ant.is_empty());
    }

    #[test]
    fn quantifier_rules() {
        let all = f("all x. p(x)");
        let d = all_l(axiom(&f("p(y)")), &all, &Term::var("y"));
        let d = ex_r(d, &f("ex x. p(x)"), &Term::var("y"));
        let d = imp_r(d, &all);
        assert!(check(&d, Calculus::Li).is_empty(), "{:?}", check(&d, Calculus::Li));
        let g = all_r(axiom(&f("p(y)")), "y");
        assert!(!check(&g, Calculus::Li).is_empty());
    }
}
