//! The natural-number predicate `Nn` and relativization of first-order formulas.

use super::eq::term_eq;
use super::nd::{conj_e, discharge, hyp, inst2, inst_all, mp};
use crate::error::{Error, Result};
use crate::kernel::build::{all2_r, and_r, imp_r};
use crate::kernel::Derivation;
use crate::syntax::{Abstract, Conn, Formula, Level, Quant, SetRef, Term};

const X: &str = "X";

fn x_atom(t: Term) -> Formula {
    Formula::set_atom(X, t)
}

fn at(f: &Formula, tau: &Abstract) -> Formula {
    Formula::all2(X, f).instantiate_set(tau).expect("set quantifier")
}

/// `Sub(X) := ∀x y. x = y ∧ X(x) → X(y)`, for `X` replaced by `τ`.
pub fn sub(tau: &Abstract) -> Formula {
    let (x, y) = (Term::var("x"), Term::var("y"));
    let body = Formula::imp(Formula::and(Formula::eq(x.clone(), y.clone()), x_atom(x)), x_atom(y));
    at(&Formula::all("x", &Formula::all("y", &body)), tau)
}

/// `Suc(X) := ∀x. X(x) → X(s(x))`, for `X` replaced by `τ`.
pub fn suc(tau: &Abstract) -> Formula {
    let x = Term::var("x");
    at(&Formula::all("x", &Formula::imp(x_atom(x.clone()), x_atom(Term::succ(x)))), tau)
}

/// `Sub(τ) ∧ Suc(τ) ∧ τ(0)`.
pub fn nn_hyp(tau: &Abstract) -> Formula {
    Formula::conj(vec![sub(tau), suc(tau), tau.apply(&Term::zero())])
}

/// `Nn(t) := ∀X. Sub(X) ∧ Suc(X) ∧ X(0) → X(t)`.
pub fn nn(t: &Term) -> Formula {
    let var = Abstract::set_var(X);
    Formula::all2(X, &Formula::imp(nn_hyp(&var), x_atom(t.clone())))
}

/// The term `t` if `f` is `Nn(t)`.
pub fn nn_argument(f: &Formula) -> Option<Term> {
    let Formula::SetQuant(Quant::All, _) = f else { return None };
    let body = f.instantiate_set(&Abstract::set_var("Z0"))?;
    match body {
        Formula::Bin(Conn::Imp, _, r) => match *r {
            Formula::SetAtom(SetRef::Free(ref z), ref t) if z == "Z0" && nn(t) == *f => Some(t.clone()),
            _ => None,
        },
        _ => None,
    }
}

/// Restricts every first-order quantifier to `Nn`.
pub fn relativize(phi: &Formula) -> Result<Formula> {
    if phi.level() != Level::FIRST_ORDER {
        return Err(Error::LevelViolation(format!("{phi} has level {}, expected -1", phi.level())));
    }
    Ok(rel(phi))
}

pub(crate) fn rel(phi: &Formula) -> Formula {
    match phi {
        Formula::Pred(..) | Formula::SetAtom(..) | Formula::Bot => phi.clone(),
        Formula::Bin(c, l, r) => Formula::bin(*c, rel(l), rel(r)),
        Formula::Quant(q, _) => {
            let mut used = phi.free_term_vars();
            used.extend(phi.free_set_vars());
            let z = crate::kernel::Fresh::new(used).next("z");
            let zt = Term::var(z.clone());
            let body = rel(&phi.instantiate(&zt).expect("quantifier"));
            match q {
                Quant::All => Formula::all(&z, &Formula::imp(nn(&zt), body)),
                Quant::Ex => Formula::ex(&z, &Formula::and(nn(&zt), body)),
            }
        }
        Formula::SetQuant(..) => unreachable!("first-order input"),
    }
}

/// `⇒ Nn(0)`.
pub fn nn_zero() -> Derivation {
    let h = nn_hyp(&Abstract::set_var(X));
    all2_r(imp_r(conj_e(hyp(&h), 2, 3), &h), X)
}

/// `Nn(t) ⇒ Nn(s(t))`.
pub fn nn_succ(t: &Term) -> Derivation {
    let var = Abstract::set_var(X);
    let h = nn_hyp(&var);
    let xt = mp(hyp(&h), inst2(hyp(&nn(t)), &var));
    let step = inst_all(conj_e(hyp(&h), 1, 3), std::slice::from_ref(t));
    all2_r(imp_r(mp(xt, step), &h), X)
}

/// `u = v, Nn(u) ⇒ Nn(v)`.
pub fn nn_transport(u: &Term, v: &Term) -> Derivation {
    let var = Abstract::set_var(X);
    let h = nn_hyp(&var);
    let xu = mp(hyp(&h), inst2(hyp(&nn(u)), &var));
    let subst = inst_all(conj_e(hyp(&h), 0, 3), &[u.clone(), v.clone()]);
    let both = and_r(hyp(&Formula::eq(u.clone(), v.clone())), xu);
    all2_r(imp_r(mp(both, subst), &h), X)
}

/// `Γ_eq, a = b, Nn(t[a]) ⇒ Nn(t[b])`.
pub fn nn_term_transport(t: &Term, x: &str, a: &Term, b: &Term) -> Derivation {
    let (ta, tb) = (t.subst_var(x, a), t.subst_var(x, b));
    discharge(nn_transport(&ta, &tb), term_eq(t, x, a, b))
}
