use std::collections::{BTreeMap, BTreeSet};

use super::formula::Formula;
use super::term::Term;
use crate::error::{Error, Result};

/// A unary function given by the simplified recursion scheme
/// `f(0) = base`, `f(s(x)) = step(x, f(x))`.
///
/// `base` is closed; `step` may mention the template variables `x`
/// (predecessor) and `y` (previous value).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrSymbol {
    pub name: String,
    pub base: Term,
    pub step: Term,
}

impl PrSymbol {
    /// `step(t, f(t))`.
    pub fn step_at(&self, t: &Term) -> Term {
        let prev = Term::app(self.name.clone(), vec![t.clone()]);
        self.step.subst_var("y", &prev).subst_var("x", t)
    }

    /// `Def(f) := f(0) = base ∧ ∀x. f(s(x)) = step(x, f(x))`.
    pub fn definition(&self) -> Formula {
        let f = |t: Term| Term::app(self.name.clone(), vec![t]);
        let x = Term::var("x");
        let rec = Formula::eq(f(Term::succ(x.clone())), self.step_at(&x));
        Formula::and(Formula::eq(f(Term::zero()), self.base.clone()), Formula::all("x", &rec))
    }
}

/// Declared function and predicate symbols with arities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Language {
    pub functions: BTreeMap<String, usize>,
    pub predicates: BTreeMap<String, usize>,
    pub pr: BTreeMap<String, PrSymbol>,
}

impl Language {
    pub fn new() -> Language {
        Language::default()
    }

    /// `0`, `s`, `=`.
    pub fn pa() -> Language {
        Language::new().with_function("0", 0).with_function("s", 1).with_predicate("=", 2)
    }

    pub fn with_function(mut self, name: &str, arity: usize) -> Language {
        self.functions.insert(name.into(), arity);
        self
    }

    pub fn with_predicate(mut self, name: &str, arity: usize) -> Language {
        self.predicates.insert(name.into(), arity);
        self
    }

    /// Declares a unary primitive-recursive symbol. The step template must
    /// only use already declared symbols and the variables `x`, `y`.
    pub fn with_pr(mut self, name: &str, base: Term, step: Term) -> Result<Language> {
        if !base.is_ground() {
            return Err(Error::Precondition(format!("base of {name} must be closed")));
        }
        if let Some(v) = step.vars().into_iter().find(|v| v != "x" && v != "y") {
            return Err(Error::Precondition(format!("step of {name} mentions {v}")));
        }
        self.check_term(&base)?;
        self.functions.insert(name.into(), 1);
        self.check_term(&step)?;
        self.pr.insert(name.into(), PrSymbol { name: name.into(), base, step });
        Ok(self)
    }

    /// Names usable as bare constants in the concrete syntax.
    pub fn constants(&self) -> BTreeSet<String> {
        self.functions.iter().filter(|(_, a)| **a == 0).map(|(n, _)| n.clone()).collect()
    }

    pub fn check_term(&self, t: &Term) -> Result<()> {
        if let Term::App(f, args) = t {
            match self.functions.get(f) {
                Some(a) if *a == args.len() => {}
                Some(a) => return Err(Error::Precondition(format!("{f} expects {a} arguments, got {}", args.len()))),
                None => return Err(Error::UnknownFunctionSymbol(f.clone())),
            }
            args.iter().try_for_each(|a| self.check_term(a))?;
        }
        Ok(())
    }

    /// Arity check of every symbol in `phi`.
    pub fn check_formula(&self, phi: &Formula) -> Result<()> {
        let mut funs = BTreeSet::new();
        phi.collect_functions(&mut funs);
        for (f, n) in funs {
            match self.functions.get(&f) {
                Some(a) if *a == n => {}
                Some(a) => return Err(Error::Precondition(format!("{f} expects {a} arguments, got {n}"))),
                None => return Err(Error::UnknownFunctionSymbol(f)),
            }
        }
        for (p, n) in phi.predicates() {
            match self.predicates.get(&p) {
                Some(a) if *a == n => {}
                Some(a) => return Err(Error::Precondition(format!("{p} expects {a} arguments, got {n}"))),
                None => return Err(Error::Precondition(format!("undeclared predicate {p}"))),
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling_definition() {
        // d(0) = 0, d(s(x)) = s(s(d(x)))
        let lang = Language::pa()
            .with_pr("d", Term::zero(), Term::succ(Term::succ(Term::var("y"))))
            .unwrap();
        let def = lang.pr["d"].definition();
        assert_eq!(def.to_string(), "d(0) = 0 & (all x. d(s(x)) = s(s(d(x))))");
        assert!(lang.check_formula(&def).is_ok());
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let lang = Language::pa();
        let bad = Formula::eq(Term::app("s", vec![Term::zero(), Term::zero()]), Term::zero());
        assert!(lang.check_formula(&bad).is_err());
    }
}
