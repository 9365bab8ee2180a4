//! Induction along `Nn` derived from its second-order definition.

use std::collections::BTreeSet;

use super::eq::{flip, pred_eq, EqAxiomSet};
use super::nd::{and_e, discharge, conj_i, ex_e, goal, hyp, inst, inst2, mp, or_e};
use super::nn::{nn, nn_argument, nn_succ, nn_term_transport, nn_zero, rel, relativize};
use crate::error::{Error, Result};
use crate::kernel::build::{all_r, and_r, ex_r, imp_r, or_r, widen};
use crate::kernel::{check, Calculus, Derivation, Fresh, Sequent};
use crate::syntax::{Abstract, Conn, Formula, Level, Quant, Term};

/// `Γ_eq, a = b, ψ[a/x] ⇒ ψ[b/x]`, by induction on `ψ`. Subformulas of the
/// form `Nn(t)` are moved along the equation directly.
pub fn transport(psi: &Formula, x: &str, a: &Term, b: &Term, fresh: &mut Fresh) -> Result<Derivation> {
    let pa = psi.subst_term(x, a);
    if !psi.has_free_term_var(x) {
        return Ok(hyp(&pa));
    }
    if let Some(t) = nn_argument(psi) {
        return Ok(nn_term_transport(&t, x, a, b));
    }
    let pb = psi.subst_term(x, b);
    match psi {
        Formula::Pred(p, args) => Ok(pred_eq(p, args, x, a, b)),
        Formula::Bin(Conn::And, l, r) => {
            let dl = discharge(transport(l, x, a, b, fresh)?, and_e(hyp(&pa), 1));
            let dr = discharge(transport(r, x, a, b, fresh)?, and_e(hyp(&pa), 2));
            Ok(and_r(dl, dr))
        }
        Formula::Bin(Conn::Or, l, r) => {
            let dl = or_r(transport(l, x, a, b, fresh)?, 1, &r.subst_term(x, b));
            let dr = or_r(transport(r, x, a, b, fresh)?, 2, &l.subst_term(x, b));
            Ok(or_e(hyp(&pa), dl, dr))
        }
        Formula::Bin(Conn::Imp, l, r) => {
            // l[b] gives l[a] using b = a, then r[a] and r[b]
            let lb = l.subst_term(x, b);
            let la = discharge(transport(l, x, b, a, fresh)?, flip(hyp(&Formula::eq(a.clone(), b.clone()))));
            let ra = mp(la, hyp(&pa));
            let rb = discharge(transport(r, x, a, b, fresh)?, ra);
            Ok(imp_r(rb, &lb))
        }
        Formula::Quant(q, _) => {
            let z = fresh.next("z");
            let zt = Term::var(z.clone());
            let body = psi.instantiate(&zt).expect("quantifier");
            let inner = transport(&body, x, a, b, fresh)?;
            match q {
                Quant::All => Ok(all_r(discharge(inner, inst(hyp(&pa), &zt)), &z)),
                Quant::Ex => {
                    let intro = ex_r(inner, &pb, &zt);
                    Ok(ex_e(hyp(&pa), intro, &z))
                }
            }
        }
        _ => Err(Error::Precondition(format!("cannot move {psi} along an equation"))),
    }
}

/// `[∀x.Nn(x) → P(x) → P(s(x))] ∧ P(0) → ∀x.Nn(x) → P(x)`.
pub fn induction_statement(p: &Formula, x: &str) -> Formula {
    let xt = Term::var(x);
    let step = Formula::all(x, &Formula::imp(nn(&xt), Formula::imp(p.clone(), p.subst_term(x, &Term::succ(xt.clone())))));
    let base = p.subst_term(x, &Term::zero());
    let concl = Formula::all(x, &Formula::imp(nn(&xt), p.clone()));
    Formula::imp(Formula::and(step, base), concl)
}

/// Derivation of `Γ_eq ⇒ induction_statement(P, x)` for a formula `P` of
/// level at most 0, through the abstract `λx. P(x) ∧ Nn(x)`.
pub fn induction_core(p: &Formula, x: &str) -> Result<Derivation> {
    if !p.level().within(0) {
        return Err(Error::LevelViolation(format!("{p} has level {}", p.level())));
    }
    let mut used = p.free_term_vars();
    used.extend(p.free_set_vars());
    let mut fresh = Fresh::new(used);
    let xt = Term::var(x);
    let statement = induction_statement(p, x);
    let Formula::Bin(_, hyps, _) = &statement else { unreachable!() };
    let hyps = (**hyps).clone();

    let tau = Abstract::new(x, &Formula::and(p.clone(), nn(&xt)));
    let at = |t: &Term| tau.apply(t);
    let (a, b) = (fresh.next("a"), fresh.next("b"));
    let (at_, bt) = (Term::var(a.clone()), Term::var(b.clone()));

    // Sub(τ)
    let e = Formula::and(Formula::eq(at_.clone(), bt.clone()), at(&at_));
    let eq_ab = and_e(hyp(&e), 1);
    let pa = and_e(and_e(hyp(&e), 2), 1);
    let na = and_e(and_e(hyp(&e), 2), 2);
    let pb = discharge(discharge(transport(p, x, &at_, &bt, &mut fresh)?, pa), eq_ab.clone());
    let nb = discharge(discharge(nn_term_transport(&xt, x, &at_, &bt), na), eq_ab);
    let sub = all_r(all_r(imp_r(and_r(pb, nb), &e), &b), &a);

    // Suc(τ)
    let ta = at(&at_);
    let pa = and_e(hyp(&ta), 1);
    let na = and_e(hyp(&ta), 2);
    let step = inst(and_e(hyp(&hyps), 1), &at_);
    let psa = mp(pa, mp(na.clone(), step));
    let nsa = discharge(nn_succ(&at_), na);
    let suc = all_r(imp_r(and_r(psa, nsa), &ta), &a);

    // τ(0)
    let zero = and_r(and_e(hyp(&hyps), 2), nn_zero());

    let y = fresh.next("y");
    let yt = Term::var(y.clone());
    let ty = mp(conj_i(vec![sub, suc, zero]), inst2(hyp(&nn(&yt)), &tau));
    let d = imp_r(all_r(imp_r(and_e(ty, 1), &nn(&yt)), &y), &hyps);
    debug_assert_eq!(goal(&d), statement);
    Ok(d)
}

fn finish(d: Derivation, gamma: &BTreeSet<Formula>, calc: Calculus) -> Result<Derivation> {
    if !d.conclusion.ant.is_subset(gamma) {
        let extra: Vec<String> = d.conclusion.ant.difference(gamma).map(|f| f.to_string()).collect();
        return Err(Error::InvalidDerivation(format!("unexpected hypotheses {}", extra.join(", "))));
    }
    let d = widen(&d, gamma);
    let v = check(&d, calc);
    if let Some(first) = v.first() {
        return Err(Error::InvalidDerivation(first.to_string()));
    }
    Ok(d)
}

/// `Γ_eq ⇒ [∀x(φ(x) → φ(s(x))) ∧ φ(0) → ∀y.φ(y)]^Nn`, checked in LIP(0).
pub fn induction_derivation(phi: &Formula) -> Result<Derivation> {
    if phi.level() != Level::FIRST_ORDER {
        return Err(Error::LevelViolation(format!("{phi} has level {}, expected -1", phi.level())));
    }
    if !phi.free_set_vars().is_empty() {
        return Err(Error::Precondition(format!("{phi} has free set variables")));
    }
    let vars = phi.free_term_vars();
    if vars.len() > 1 {
        return Err(Error::LevelViolation(format!("{phi} has {} free variables, expected one", vars.len())));
    }
    let x = vars.into_iter().next().unwrap_or_else(|| "x".into());
    let d = induction_core(&rel(phi), &x)?;
    let gamma = induction_axioms(phi);
    finish(d, &gamma, Calculus::Lip(0))
}

/// The equality axioms used by [`induction_derivation`].
pub fn induction_axioms(phi: &Formula) -> BTreeSet<Formula> {
    EqAxiomSet::for_formulas([phi]).axioms()
}

/// The formula proved by [`induction_derivation`].
pub fn induction_goal(phi: &Formula) -> Result<Sequent> {
    let x = phi.free_term_vars().into_iter().next().unwrap_or_else(|| "x".into());
    let xt = Term::var(x.clone());
    let plain = Formula::imp(
        Formula::and(Formula::all(&x, &Formula::imp(phi.clone(), phi.subst_term(&x, &Term::succ(xt)))), phi.subst_term(&x, &Term::zero())),
        Formula::all(&x, phi),
    );
    Ok(Sequent::with_succedent(induction_axioms(phi), relativize(&plain)?))
}

/// Induction for `Nn(t(x))`: the statement with `P(x) := Nn(t(x))`.
pub fn nn_term_induction(t: &Term, x: &str) -> Result<Derivation> {
    let d = induction_core(&nn(t), x)?;
    let mut eqs = EqAxiomSet::default();
    let mut syms = BTreeSet::new();
    t.collect_symbols(&mut syms);
    for (f, k) in syms {
        eqs.add_function(&f, k);
    }
    eqs.add_predicate("=", 2);
    finish(d, &eqs.axioms(), Calculus::Lip(0))
}
