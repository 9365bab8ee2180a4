//! Formulas of the theories of iterated inductive definitions and their
//! translation into parameter-free second-order formulas.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use super::fixpoint::fix_abstract;
use super::nn::nn;
use crate::error::{Error, Result};
use crate::kernel::Fresh;
use crate::syntax::{Conn, Formula, Quant, SetRef, Term};

/// A first-order formula extended with fixed-point atoms `I_ξ(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdFormula {
    /// Predicate atom, `⊥`, or an occurrence `X(t)` of a body's set variable.
    Atom(Formula),
    Fixed(Arc<FixedPoint>, Term),
    Bin(Conn, Box<IdFormula>, Box<IdFormula>),
    Quant(Quant, String, Box<IdFormula>),
}

/// The operator `ξ(X, x)` whose least fixed point is `I_ξ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub name: String,
    pub set_var: String,
    pub var: String,
    pub body: IdFormula,
}

impl FixedPoint {
    pub fn new(name: &str, set_var: &str, var: &str, body: IdFormula) -> Result<FixedPoint> {
        if !body.sign_ok(set_var, true) {
            return Err(Error::NotPositive(set_var.into()));
        }
        if let Some(v) = body.free_term_vars().into_iter().find(|v| v != var) {
            return Err(Error::Precondition(format!("body of {name} has free variable {v}")));
        }
        if let Some(v) = body.free_set_vars().into_iter().find(|v| v != set_var) {
            return Err(Error::Precondition(format!("body of {name} has free set variable {v}")));
        }
        Ok(FixedPoint { name: name.into(), set_var: set_var.into(), var: var.into(), body })
    }

    pub fn id_level(&self) -> usize {
        self.body.id_level() + 1
    }
}

impl IdFormula {
    pub fn atom(f: Formula) -> IdFormula {
        IdFormula::Atom(f)
    }

    pub fn fixed(def: &Arc<FixedPoint>, t: Term) -> IdFormula {
        IdFormula::Fixed(def.clone(), t)
    }

    pub fn bin(c: Conn, l: IdFormula, r: IdFormula) -> IdFormula {
        IdFormula::Bin(c, Box::new(l), Box::new(r))
    }

    pub fn quant(q: Quant, x: &str, body: IdFormula) -> IdFormula {
        IdFormula::Quant(q, x.into(), Box::new(body))
    }

    /// Nesting depth of fixed-point atoms.
    pub fn id_level(&self) -> usize {
        match self {
            IdFormula::Atom(_) => 0,
            IdFormula::Fixed(d, _) => d.id_level(),
            IdFormula::Bin(_, l, r) => l.id_level().max(r.id_level()),
            IdFormula::Quant(_, _, b) => b.id_level(),
        }
    }

    pub fn free_term_vars(&self) -> BTreeSet<String> {
        match self {
            IdFormula::Atom(f) => f.free_term_vars(),
            IdFormula::Fixed(_, t) => t.vars(),
            IdFormula::Bin(_, l, r) => {
                let mut s = l.free_term_vars();
                s.extend(r.free_term_vars());
                s
            }
            IdFormula::Quant(_, x, b) => {
                let mut s = b.free_term_vars();
                s.remove(x);
                s
            }
        }
    }

    pub fn free_set_vars(&self) -> BTreeSet<String> {
        match self {
            IdFormula::Atom(f) => f.free_set_vars(),
            IdFormula::Fixed(..) => BTreeSet::new(),
            IdFormula::Bin(_, l, r) => {
                let mut s = l.free_set_vars();
                s.extend(r.free_set_vars());
                s
            }
            IdFormula::Quant(_, _, b) => b.free_set_vars(),
        }
    }

    fn sign_ok(&self, x: &str, positive: bool) -> bool {
        match self {
            IdFormula::Atom(f) if positive => f.positive_in(x),
            IdFormula::Atom(f) => f.negative_in(x),
            IdFormula::Fixed(..) => true,
            IdFormula::Bin(Conn::Imp, l, r) => l.sign_ok(x, !positive) && r.sign_ok(x, positive),
            IdFormula::Bin(_, l, r) => l.sign_ok(x, positive) && r.sign_ok(x, positive),
            IdFormula::Quant(_, _, b) => b.sign_ok(x, positive),
        }
    }

    /// Reads fixed-point atoms out of an ordinary formula: unary predicates
    /// and set atoms named in `defs` become `I_ξ(t)`.
    pub fn from_formula(f: &Formula, defs: &BTreeMap<String, Arc<FixedPoint>>) -> IdFormula {
        let mut used = f.free_term_vars();
        used.extend(f.free_set_vars());
        from(f, defs, &mut Fresh::new(used))
    }
}

fn from(f: &Formula, defs: &BTreeMap<String, Arc<FixedPoint>>, fresh: &mut Fresh) -> IdFormula {
    match f {
        Formula::Pred(p, args) if args.len() == 1 && defs.contains_key(p) => IdFormula::Fixed(defs[p].clone(), args[0].clone()),
        Formula::SetAtom(SetRef::Free(p), t) if defs.contains_key(p) => IdFormula::Fixed(defs[p].clone(), t.clone()),
        Formula::Bin(c, l, r) => IdFormula::bin(*c, from(l, defs, fresh), from(r, defs, fresh)),
        Formula::Quant(q, _) => {
            let z = fresh.next("z");
            let body = f.instantiate(&Term::var(z.clone())).expect("quantifier");
            IdFormula::quant(*q, &z, from(&body, defs, fresh))
        }
        _ => IdFormula::Atom(f.clone()),
    }
}

/// `φ^Fix`: fixed-point atoms become `Fix_{ξ^Fix}(t)` and first-order
/// quantifiers are relativized to `Nn`.
pub fn id_translate(phi: &IdFormula) -> Result<Formula> {
    match phi {
        IdFormula::Atom(f) => match f {
            Formula::Pred(..) | Formula::Bot | Formula::SetAtom(SetRef::Free(_), _) => Ok(f.clone()),
            _ => Err(Error::Precondition(format!("{f} is not an atom"))),
        },
        IdFormula::Fixed(def, t) => {
            let body = id_translate(&def.body)?;
            if !body.positive_in(&def.set_var) {
                return Err(Error::NotPositive(def.set_var.clone()));
            }
            Ok(fix_abstract(&body, &def.set_var, &def.var).apply(t))
        }
        IdFormula::Bin(c, l, r) => Ok(Formula::bin(*c, id_translate(l)?, id_translate(r)?)),
        IdFormula::Quant(q, x, b) => {
            let body = id_translate(b)?;
            let g = nn(&Term::var(x.clone()));
            Ok(match q {
                Quant::All => Formula::all(x, &Formula::imp(g, body)),
                Quant::Ex => Formula::ex(x, &Formula::and(g, body)),
            })
        }
    }
}

impl fmt::Display for IdFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdFormula::Atom(a) => write!(f, "{a}"),
            IdFormula::Fixed(d, t) => write!(f, "{}({t})", d.name),
            IdFormula::Bin(c, l, r) => {
                let op = match c {
                    Conn::And => "&",
                    Conn::Or => "|",
                    Conn::Imp => "->",
                };
                write!(f, "({l} {op} {r})")
            }
            IdFormula::Quant(q, x, b) => {
                let k = if *q == Quant::All { "all" } else { "ex" };
                write!(f, "{k} {x}. {b}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::nn::relativize;
    use crate::syntax::{formula, Level};

    fn naturals() -> Arc<FixedPoint> {
        let body = IdFormula::from_formula(&formula("x = 0 | ex y. x = s(y) & X(y)").unwrap(), &BTreeMap::new());
        Arc::new(FixedPoint::new("N", "X", "x", body).unwrap())
    }

    #[test]
    fn level_zero_is_relativization() {
        let f = formula("all x. ex y. q(x, y) -> p(0)").unwrap();
        let id = IdFormula::from_formula(&f, &BTreeMap::new());
        assert_eq!(id.id_level(), 0);
        assert_eq!(id_translate(&id).unwrap(), relativize(&f).unwrap());
    }

    #[test]
    fn fixed_point_atoms() {
        let n = naturals();
        let phi = IdFormula::fixed(&n, Term::zero());
        let t = id_translate(&phi).unwrap();
        assert_eq!(t.level(), Level::At(1));
        assert!(t.free_term_vars().is_empty());

        let defs: BTreeMap<_, _> = [("N".to_string(), n.clone())].into();
        let body = IdFormula::from_formula(&formula("N(x) & (X(s(x)) | x = 0)").unwrap(), &defs);
        let m = Arc::new(FixedPoint::new("M", "X", "x", body).unwrap());
        assert_eq!(m.id_level(), 2);
        let t = id_translate(&IdFormula::fixed(&m, Term::var("w"))).unwrap();
        assert_eq!(t.level(), Level::At(2));
        assert_eq!(t.free_term_vars(), ["w".to_string()].into());
    }

    #[test]
    fn negative_body_rejected() {
        let body = IdFormula::from_formula(&formula("X(x) -> bot").unwrap(), &BTreeMap::new());
        assert!(matches!(FixedPoint::new("B", "X", "x", body), Err(Error::NotPositive(_))));
    }
}
