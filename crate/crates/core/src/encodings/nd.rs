//! Natural-deduction style combinators over sequent derivations. Elimination
//! steps are cuts against a one-step left rule, so every combinator returns a
//! derivation whose antecedent is the union of the hypotheses it used.

use crate::kernel::build::{all2_l, all_l, and_l, and_r, axiom, cut, ex_l, imp_l, or_l};
use crate::kernel::Derivation;
use crate::syntax::{Abstract, Conn, Formula, Term};

pub fn hyp(phi: &Formula) -> Derivation {
    axiom(phi)
}

pub fn goal(d: &Derivation) -> Formula {
    d.conclusion.suc.clone().expect("derivation with a succedent")
}

fn parts(f: &Formula, c: Conn) -> (Formula, Formula) {
    match f {
        Formula::Bin(k, l, r) if *k == c => ((**l).clone(), (**r).clone()),
        _ => panic!("expected a {c:?} formula, found {f}"),
    }
}

/// From `Γ ⇒ A` and `Δ ⇒ A → B` to `Γ, Δ ⇒ B`.
pub fn mp(da: Derivation, dimp: Derivation) -> Derivation {
    let imp = goal(&dimp);
    let (_, b) = parts(&imp, Conn::Imp);
    cut(dimp, imp_l(da, hyp(&b), &imp))
}

/// Replaces the hypothesis proved by `proof` in `d` by the hypotheses of `proof`.
pub fn discharge(d: Derivation, proof: Derivation) -> Derivation {
    cut(proof, d)
}

pub fn inst(d: Derivation, t: &Term) -> Derivation {
    let q = goal(&d);
    let body = q.instantiate(t).expect("universal");
    cut(d, all_l(hyp(&body), &q, t))
}

pub fn inst_all(d: Derivation, ts: &[Term]) -> Derivation {
    ts.iter().fold(d, inst)
}

pub fn inst2(d: Derivation, tau: &Abstract) -> Derivation {
    let q = goal(&d);
    let body = q.instantiate_set(tau).expect("second-order universal");
    cut(d, all2_l(hyp(&body), &q, tau))
}

pub fn and_e(d: Derivation, i: u8) -> Derivation {
    let conj = goal(&d);
    let (l, r) = parts(&conj, Conn::And);
    let part = if i == 1 { l } else { r };
    cut(d, and_l(hyp(&part), &conj, i))
}

/// Conjunct `k` of a right-nested conjunction with `n` parts.
pub fn conj_e(mut d: Derivation, k: usize, n: usize) -> Derivation {
    for _ in 0..k {
        d = and_e(d, 2);
    }
    if k + 1 < n {
        and_e(d, 1)
    } else {
        d
    }
}

/// Right-nested conjunction introduction matching `Formula::conj`.
pub fn conj_i(ds: Vec<Derivation>) -> Derivation {
    let mut it = ds.into_iter().rev();
    let last = it.next().expect("at least one conjunct");
    it.fold(last, |acc, d| and_r(d, acc))
}

/// From `Γ ⇒ ∃x.ψ` and `ψ(y), Δ ⇒ C` with `y` fresh to `Γ, Δ ⇒ C`.
pub fn ex_e(d: Derivation, body: Derivation, y: &str) -> Derivation {
    let q = goal(&d);
    cut(d, ex_l(body, &q, y))
}

/// From `Γ ⇒ A ∨ B`, `A, Δ ⇒ C` and `B, Δ' ⇒ C` to `Γ, Δ, Δ' ⇒ C`.
pub fn or_e(d: Derivation, dl: Derivation, dr: Derivation) -> Derivation {
    let disj = goal(&d);
    cut(d, or_l(dl, dr, &disj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check, Calculus};
    use crate::syntax::formula;

    #[test]
    fn combinators_check() {
        let f = |s: &str| formula(s).unwrap();
        let d = mp(hyp(&f("p")), hyp(&f("p -> q & r")));
        let d = and_e(d, 2);
        assert!(check(&d, Calculus::Li).is_empty());
        assert_eq!(goal(&d), f("r"));
        let c = conj_i(vec![hyp(&f("a")), hyp(&f("b")), hyp(&f("c"))]);
        assert_eq!(goal(&c), Formula::conj(vec![f("a"), f("b"), f("c")]));
        let e = conj_e(c, 2, 3);
        assert_eq!(goal(&e), f("c"));
        let d = inst(hyp(&f("all x. p(x)")), &Term::var("z"));
        assert!(check(&d, Calculus::Li).is_empty());
    }
}
