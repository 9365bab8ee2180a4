//! Least fixed points of positive operators as second-order abstracts.

use super::nd::{and_e, discharge, ex_e, hyp, inst, inst2, mp, or_e};
use super::nn::sub;
use crate::error::{Error, Result};
use crate::kernel::build::{all2_r, all_r, and_r, ex_r, imp_r, or_r};
use crate::kernel::{check, Calculus, Derivation, Fresh};
use crate::syntax::{Abstract, Conn, Formula, Quant, Term};

/// `Fix_φ` with its two characteristic derivations.
#[derive(Clone, Debug)]
pub struct FixpointKit {
    /// `λt. ∀X. Sub(X) ∧ ∀x(φ(X,x) → X(x)) → X(t)`.
    pub fix: Abstract,
    pub body: Formula,
    pub set_var: String,
    pub var: String,
    pub level: u32,
    /// `⇒ ∀x. φ(Fix, x) → Fix(x)`.
    pub lfp1: Derivation,
}

/// `∀x. φ(τ, x) → τ(x)`.
pub fn closed_under(body: &Formula, set_var: &str, var: &str, tau: &Abstract) -> Formula {
    let x = Term::var(var);
    let f = Formula::all(var, &Formula::imp(body.clone(), Formula::set_atom(set_var, x)));
    Formula::all2(set_var, &f).instantiate_set(tau).expect("set quantifier")
}

fn guard(body: &Formula, set_var: &str, var: &str, tau: &Abstract) -> Formula {
    Formula::and(sub(tau), closed_under(body, set_var, var, tau))
}

/// `Fix_φ` for a body `φ(X, x)`.
pub fn fix_abstract(body: &Formula, set_var: &str, var: &str) -> Abstract {
    let own = Abstract::set_var(set_var);
    let t = "t";
    let fix_t = Formula::all2(set_var, &Formula::imp(guard(body, set_var, var, &own), Formula::set_atom(set_var, Term::var(t))));
    Abstract::new(t, &fix_t)
}

/// Positivity step: `Sub(X), Cl(X), ψ[Fix/X] ⇒ ψ` when `sign` holds and the
/// converse direction otherwise. `Fix(t) ⇒ X(t)` at positive atoms.
fn mono(psi: &Formula, kit: &Ctx, sign: bool, fresh: &mut Fresh) -> Result<Derivation> {
    let with_fix = psi.subst_set(&kit.set_var, &kit.fix);
    if !psi.has_free_set_var(&kit.set_var) {
        return Ok(hyp(psi));
    }
    let (from, to) = if sign { (with_fix.clone(), psi.clone()) } else { (psi.clone(), with_fix.clone()) };
    match psi {
        Formula::SetAtom(_, t) if sign => {
            // Fix(t) gives X(t) by instantiating at X
            let inst_x = inst2(hyp(&kit.fix.apply(t)), &Abstract::set_var(&kit.set_var));
            let g = and_r(hyp(&sub(&Abstract::set_var(&kit.set_var))), hyp(&kit.closed));
            Ok(mp(g, inst_x))
        }
        Formula::SetAtom(..) => Err(Error::NotPositive(kit.set_var.clone())),
        Formula::Bin(c, l, r) => {
            let part = |f: &Formula, s: bool, fresh: &mut Fresh| mono(f, kit, s, fresh);
            let other = |f: &Formula| if sign { f.clone() } else { f.subst_set(&kit.set_var, &kit.fix) };
            match c {
                Conn::And => {
                    let dl = discharge(part(l, sign, fresh)?, and_e(hyp(&from), 1));
                    let dr = discharge(part(r, sign, fresh)?, and_e(hyp(&from), 2));
                    Ok(and_r(dl, dr))
                }
                Conn::Or => {
                    let dl = or_r(part(l, sign, fresh)?, 1, &other(r));
                    let dr = or_r(part(r, sign, fresh)?, 2, &other(l));
                    Ok(or_e(hyp(&from), dl, dr))
                }
                Conn::Imp => {
                    let l_to = other(l);
                    let l_from = mono(l, kit, !sign, fresh)?;
                    let r_from = mp(l_from, hyp(&from));
                    let r_to = discharge(part(r, sign, fresh)?, r_from);
                    Ok(imp_r(r_to, &l_to))
                }
            }
        }
        Formula::Quant(q, _) => {
            let z = fresh.next("z");
            let zt = Term::var(z.clone());
            let body = psi.instantiate(&zt).expect("quantifier");
            let inner = mono(&body, kit, sign, fresh)?;
            match q {
                Quant::All => Ok(all_r(discharge(inner, inst(hyp(&from), &zt)), &z)),
                Quant::Ex => Ok(ex_e(hyp(&from), ex_r(inner, &to, &zt), &z)),
            }
        }
        _ => Err(Error::Precondition(format!("unexpected subformula {psi}"))),
    }
}

struct Ctx {
    fix: Abstract,
    set_var: String,
    closed: Formula,
}

/// Builds `Fix_φ` and derives `∀x. φ(Fix, x) → Fix(x)` in LIP(n).
pub fn fixpoint_kit(body: &Formula, set_var: &str, var: &str, n: u32) -> Result<FixpointKit> {
    if !body.positive_in(set_var) {
        return Err(Error::NotPositive(set_var.into()));
    }
    if let Some(v) = body.free_term_vars().into_iter().find(|v| v != var) {
        return Err(Error::Precondition(format!("body has free variable {v}")));
    }
    if let Some(v) = body.free_set_vars().into_iter().find(|v| v != set_var) {
        return Err(Error::Precondition(format!("body has free set variable {v}")));
    }
    if !body.level().within(n as i32 - 1) {
        return Err(Error::LevelViolation(format!("body has level {}, expected at most {}", body.level(), n as i32 - 1)));
    }
    let fix = fix_abstract(body, set_var, var);
    let own = Abstract::set_var(set_var);
    let ctx = Ctx { fix: fix.clone(), set_var: set_var.into(), closed: closed_under(body, set_var, var, &own) };
    let mut fresh = Fresh::new([var.to_string(), set_var.to_string(), "t".into()]);
    let y = fresh.next("y");
    let yt = Term::var(y.clone());
    let phi_y = body.subst_term(var, &yt);
    let phi_x = mono(&phi_y, &ctx, true, &mut fresh)?;
    let x_y = mp(phi_x, inst(hyp(&ctx.closed), &yt));
    // Sub(X), Cl(X) into the single guard
    let g = guard(body, set_var, var, &own);
    let x_y = discharge(discharge(x_y, and_e(hyp(&g), 1)), and_e(hyp(&g), 2));
    let fix_y = all2_r(imp_r(x_y, &g), set_var);
    let lfp1 = all_r(imp_r(fix_y, &phi_y.subst_set(set_var, &fix)), &y);
    if let Some(v) = check(&lfp1, Calculus::Lip(n)).first() {
        return Err(Error::InvalidDerivation(v.to_string()));
    }
    let level = fix.level().value().unwrap_or(0) as u32;
    Ok(FixpointKit { fix, body: body.clone(), set_var: set_var.into(), var: var.into(), level, lfp1 })
}

impl FixpointKit {
    /// `Sub(τ) ⇒ ∀x(φ(τ, x) → τ(x)) → ∀y(Fix(y) → τ(y))`, checked in LIP(n).
    pub fn lfp2(&self, tau: &Abstract, n: u32) -> Result<Derivation> {
        if !tau.level().within(n as i32) {
            return Err(Error::LevelViolation(format!("abstract {tau} has level {}, expected at most {n}", tau.level())));
        }
        let mut used = tau.free_term_vars();
        used.insert(self.var.clone());
        let y = Fresh::new(used).next("y");
        let yt = Term::var(y.clone());
        let cl = closed_under(&self.body, &self.set_var, &self.var, tau);
        let g = and_r(hyp(&sub(tau)), hyp(&cl));
        let ty = mp(g, inst2(hyp(&self.fix.apply(&yt)), tau));
        let d = imp_r(all_r(imp_r(ty, &self.fix.apply(&yt)), &y), &cl);
        if let Some(v) = check(&d, Calculus::Lip(n)).first() {
            return Err(Error::InvalidDerivation(v.to_string()));
        }
        debug_assert_eq!(d.conclusion.ant.len(), 1);
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::nn::relativize;
    use crate::syntax::{formula, Level};

    fn naturals() -> Formula {
        formula("x = 0 | ex y. x = s(y) & X(y)").unwrap()
    }

    #[test]
    fn naturals_kit() {
        for n in [1, 2] {
            let kit = fixpoint_kit(&naturals(), "X", "x", n).unwrap();
            assert!(check(&kit.lfp1, Calculus::Lip(n)).is_empty());
            let tau = Abstract::new("x", &formula("p(x)").unwrap());
            let d = kit.lfp2(&tau, n).unwrap();
            assert!(check(&d, Calculus::Lip(n)).is_empty());
        }
    }

    #[test]
    fn level_of_fix() {
        let body = relativize(&naturals()).unwrap();
        assert_eq!(body.level(), Level::At(0));
        let kit = fixpoint_kit(&body, "X", "x", 1).unwrap();
        assert_eq!(kit.fix.level(), Level::At(1));
        assert!(matches!(fixpoint_kit(&body, "X", "x", 0), Err(Error::LevelViolation(_))));
    }

    #[test]
    fn negative_body() {
        let body = formula("X(x) -> bot").unwrap();
        assert!(matches!(fixpoint_kit(&body, "X", "x", 1), Err(Error::NotPositive(_))));
    }

    #[test]
    fn implication_in_body() {
        let body = formula("(p(x) -> X(s(x))) & all z. q(z) -> X(z)").unwrap();
        let kit = fixpoint_kit(&body, "X", "x", 1).unwrap();
        assert!(check(&kit.lfp1, Calculus::Lip(1)).is_empty());
    }
}
