use std::collections::{BTreeMap, BTreeSet};

use super::nd::{conj_i, discharge, hyp, inst_all, mp};
use crate::kernel::Derivation;
use crate::syntax::{Formula, Term};

/// The equality axioms `Γ_eq`: reflexivity, symmetry, transitivity and one
/// congruence axiom for each function symbol of positive arity and each
/// predicate symbol in use.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EqAxiomSet {
    pub functions: BTreeMap<String, usize>,
    pub predicates: BTreeMap<String, usize>,
}

fn v(name: &str, i: usize) -> Term {
    Term::var(format!("{name}{i}"))
}

fn eq(a: Term, b: Term) -> Formula {
    Formula::eq(a, b)
}

/// `∀u1..uk ∀v1..vk. body`.
fn close(k: usize, body: Formula) -> Formula {
    let names: Vec<String> = (0..k).map(|i| format!("u{i}")).chain((0..k).map(|i| format!("v{i}"))).collect();
    names.iter().rev().fold(body, |acc, n| Formula::all(n, &acc))
}

pub fn refl() -> Formula {
    Formula::all("x", &eq(Term::var("x"), Term::var("x")))
}

pub fn sym() -> Formula {
    let (x, y) = (Term::var("x"), Term::var("y"));
    Formula::all("x", &Formula::all("y", &Formula::imp(eq(x.clone(), y.clone()), eq(y, x))))
}

pub fn trans() -> Formula {
    let (x, y, z) = (Term::var("x"), Term::var("y"), Term::var("z"));
    let body = Formula::imp(Formula::and(eq(x.clone(), y.clone()), eq(y, z.clone())), eq(x, z));
    Formula::all("x", &Formula::all("y", &Formula::all("z", &body)))
}

fn pairwise(k: usize) -> Vec<Formula> {
    (0..k).map(|i| eq(v("u", i), v("v", i))).collect()
}

/// `∀u⃗ v⃗. u1 = v1 ∧ … ∧ uk = vk → f(u⃗) = f(v⃗)`.
pub fn function_congruence(f: &str, k: usize) -> Formula {
    let us = (0..k).map(|i| v("u", i)).collect();
    let vs = (0..k).map(|i| v("v", i)).collect();
    close(k, Formula::imp(Formula::conj(pairwise(k)), eq(Term::app(f, us), Term::app(f, vs))))
}

/// `∀u⃗ v⃗. u1 = v1 ∧ … ∧ uk = vk ∧ p(u⃗) → p(v⃗)`.
pub fn predicate_congruence(p: &str, k: usize) -> Formula {
    let us = (0..k).map(|i| v("u", i)).collect();
    let vs = (0..k).map(|i| v("v", i)).collect();
    let mut hyps = pairwise(k);
    hyps.push(Formula::pred(p, us));
    close(k, Formula::imp(Formula::conj(hyps), Formula::pred(p, vs)))
}

impl EqAxiomSet {
    /// Symbols occurring in the given formulas.
    pub fn for_formulas<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> EqAxiomSet {
        let mut funs = BTreeSet::new();
        let mut preds = BTreeSet::new();
        for f in fs {
            f.collect_functions(&mut funs);
            f.collect_predicates(&mut preds);
        }
        let mut s = EqAxiomSet::default();
        for (name, k) in funs {
            s.add_function(&name, k);
        }
        for (name, k) in preds {
            s.add_predicate(&name, k);
        }
        s
    }

    pub fn add_function(&mut self, name: &str, k: usize) {
        if k > 0 {
            self.functions.insert(name.into(), k);
        }
    }

    pub fn add_predicate(&mut self, name: &str, k: usize) {
        if k > 0 {
            self.predicates.insert(name.into(), k);
        }
    }

    pub fn axioms(&self) -> BTreeSet<Formula> {
        let mut out: BTreeSet<Formula> = [refl(), sym(), trans()].into();
        out.extend(self.functions.iter().map(|(f, &k)| function_congruence(f, k)));
        out.extend(self.predicates.iter().map(|(p, &k)| predicate_congruence(p, k)));
        out
    }
}

/// `sym ⇒ b = a` from a derivation of `a = b`.
pub fn flip(d: Derivation) -> Derivation {
    let (a, b) = match super::nd::goal(&d) {
        Formula::Pred(p, args) if p == "=" && args.len() == 2 => (args[0].clone(), args[1].clone()),
        other => panic!("flip on {other}"),
    };
    mp(d, inst_all(hyp(&sym()), &[a, b]))
}

/// `Γ_eq, x = y ⇒ t[x] = t[y]` where `t[z]` is `t` with `z` for `x`.
pub fn term_eq(t: &Term, x: &str, a: &Term, b: &Term) -> Derivation {
    let ta = t.subst_var(x, a);
    if !t.contains_var(x) {
        return inst_all(hyp(&refl()), &[ta]);
    }
    match t {
        Term::Var(_) => hyp(&eq(a.clone(), b.clone())),
        Term::App(f, args) => {
            let tb = t.subst_var(x, b);
            let us: Vec<Term> = args.iter().map(|s| s.subst_var(x, a)).collect();
            let vs: Vec<Term> = args.iter().map(|s| s.subst_var(x, b)).collect();
            let cong = inst_all(hyp(&function_congruence(f, args.len())), &[us, vs].concat());
            let eqs = conj_i(args.iter().map(|s| term_eq(s, x, a, b)).collect());
            let d = mp(eqs, cong);
            debug_assert_eq!(super::nd::goal(&d), eq(ta, tb));
            d
        }
        Term::Bound(_) => unreachable!("open term"),
    }
}

/// `Γ_eq, a = b, p(s⃗[a]) ⇒ p(s⃗[b])`.
pub fn pred_eq(p: &str, args: &[Term], x: &str, a: &Term, b: &Term) -> Derivation {
    let us: Vec<Term> = args.iter().map(|s| s.subst_var(x, a)).collect();
    let vs: Vec<Term> = args.iter().map(|s| s.subst_var(x, b)).collect();
    let cong = inst_all(hyp(&predicate_congruence(p, args.len())), &[us.clone(), vs].concat());
    let mut parts: Vec<Derivation> = args.iter().map(|s| term_eq(s, x, a, b)).collect();
    parts.push(hyp(&Formula::pred(p, us)));
    mp(conj_i(parts), cong)
}

/// Uses `a = b` to rewrite a hypothesis `b = a`.
pub fn with_flipped(d: Derivation, a: &Term, b: &Term) -> Derivation {
    discharge(d, flip(hyp(&eq(a.clone(), b.clone()))))
}
