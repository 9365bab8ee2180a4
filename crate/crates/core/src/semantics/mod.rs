//! Heyting-valued term models over finite algebras.
//!
//! The term domain `M` is the set of closed terms of a finite language up
//! to a depth bound; an abstract domain `D` is a set of functions `M → H`.
//! Quantifiers are evaluated as finite meets and joins over `M` and `D`.

pub mod format;
mod probe;

pub use probe::{omega_soundness_probe, ProbeEntry, ProbeReport};

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::kernel::Sequent;
use crate::lattice::HeytingAlgebra;
use crate::syntax::{Abstract, Conn, Formula, Language, Quant, SetRef, Term};

/// A function `M → H`, indexed by universe position.
pub type SetValue = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    /// `D = H^M`.
    Full,
    Explicit(Vec<SetValue>),
}

#[derive(Clone, Debug)]
pub struct Structure {
    pub algebra: HeytingAlgebra,
    universe: Vec<Term>,
    index: HashMap<Term, usize>,
    pub domain: Domain,
    /// Predicate tables; absent entries take the value `⊥`. Without a table,
    /// `=` is interpreted as syntactic identity of terms.
    pub predicates: BTreeMap<String, BTreeMap<Vec<usize>, usize>>,
}

/// All closed terms of `lang` of depth at most `depth`, shallowest first.
pub fn closed_terms(lang: &Language, depth: usize) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    let mut seen: BTreeSet<Term> = BTreeSet::new();
    for _ in 0..=depth {
        let prev = out.clone();
        for (f, &k) in &lang.functions {
            for args in tuples(prev.len(), k) {
                let t = Term::App(f.clone(), args.iter().map(|&i| prev[i].clone()).collect());
                if seen.insert(t.clone()) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// All `k`-tuples over `0..n`, lexicographically.
pub fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out.into_iter().flat_map(|t| (0..n).map(move |i| [t.clone(), vec![i]].concat())).collect();
    }
    out
}

impl Structure {
    /// The full structure over the closed terms of `lang` up to `depth`.
    pub fn full(algebra: HeytingAlgebra, lang: &Language, depth: usize) -> Result<Structure> {
        Structure::new(algebra, closed_terms(lang, depth), Domain::Full)
    }

    pub fn new(algebra: HeytingAlgebra, universe: Vec<Term>, domain: Domain) -> Result<Structure> {
        if universe.is_empty() {
            return Err(Error::Precondition("the term universe is empty".into()));
        }
        if let Some(t) = universe.iter().find(|t| !t.is_ground()) {
            return Err(Error::Precondition(format!("universe term {t} is not closed")));
        }
        if let Domain::Explicit(fs) = &domain {
            if fs.is_empty() {
                return Err(Error::Precondition("the abstract domain is empty".into()));
            }
            if fs.iter().any(|f| f.len() != universe.len() || f.iter().any(|&h| h >= algebra.len())) {
                return Err(Error::IndexOutOfRange("abstract domain member does not map M into H".into()));
            }
        }
        let index = universe.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Ok(Structure { algebra, universe, index, domain, predicates: BTreeMap::new() })
    }

    pub fn universe(&self) -> &[Term] {
        &self.universe
    }

    pub fn term_index(&self, t: &Term) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Sets `p(args) = h`.
    pub fn set_predicate(&mut self, p: &str, args: &[Term], h: usize) -> Result<()> {
        let idx = args
            .iter()
            .map(|t| self.term_index(t).ok_or_else(|| Error::IndexOutOfRange(format!("term {t} outside the universe"))))
            .collect::<Result<Vec<_>>>()?;
        if h >= self.algebra.len() {
            return Err(Error::IndexOutOfRange(format!("algebra element {h}")));
        }
        self.predicates.entry(p.to_string()).or_default().insert(idx, h);
        Ok(())
    }

    /// Members of `D`, enumerated lazily for the full domain.
    pub fn domain_members(&self) -> Vec<SetValue> {
        match &self.domain {
            Domain::Explicit(fs) => fs.clone(),
            Domain::Full => tuples(self.algebra.len(), self.universe.len()),
        }
    }

    pub fn domain_contains(&self, f: &SetValue) -> bool {
        match &self.domain {
            Domain::Full => f.len() == self.universe.len() && f.iter().all(|&h| h < self.algebra.len()),
            Domain::Explicit(fs) => fs.contains(f),
        }
    }
}

/// Values of free set variables. Variables without an entry fall back to
/// `default` when one is given.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation {
    pub sets: BTreeMap<String, SetValue>,
    pub default: Option<SetValue>,
}

impl Valuation {
    pub fn new() -> Valuation {
        Valuation::default()
    }

    /// Every set variable denotes the constant function `h`.
    pub fn constant(s: &Structure, h: usize) -> Valuation {
        Valuation { sets: BTreeMap::new(), default: Some(vec![h; s.universe.len()]) }
    }

    pub fn with(mut self, x: &str, f: SetValue) -> Valuation {
        self.sets.insert(x.to_string(), f);
        self
    }

    fn get(&self, x: &str) -> Option<&SetValue> {
        self.sets.get(x).or(self.default.as_ref())
    }
}

/// Values of free term variables, as closed terms of the universe.
pub type Assignment = BTreeMap<String, Term>;

struct Env<'a> {
    s: &'a Structure,
    v: &'a Valuation,
    sigma: &'a Assignment,
    terms: Vec<usize>,
    sets: Vec<SetValue>,
    domain: Vec<SetValue>,
}

impl Env<'_> {
    fn term(&self, t: &Term) -> Result<usize> {
        match t {
            Term::Var(x) => {
                let u = self.sigma.get(x).ok_or_else(|| Error::UncoveredVariable(x.clone()))?;
                self.s.term_index(u).ok_or_else(|| Error::Precondition(format!("{u} lies outside the term universe")))
            }
            Term::Bound(i) => Ok(self.terms[self.terms.len() - 1 - i]),
            Term::App(f, args) => {
                let args = args.iter().map(|a| Ok(self.s.universe[self.term(a)?].clone())).collect::<Result<Vec<_>>>()?;
                let u = Term::App(f.clone(), args);
                self.s.term_index(&u).ok_or_else(|| Error::Precondition(format!("{u} lies outside the term universe")))
            }
        }
    }

    fn eval(&mut self, f: &Formula) -> Result<usize> {
        let h = &self.s.algebra;
        Ok(match f {
            Formula::Bot => h.bot(),
            Formula::Pred(p, args) => {
                let idx = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>>>()?;
                match self.s.predicates.get(p) {
                    Some(table) => table.get(&idx).copied().unwrap_or(h.bot()),
                    None if p == "=" && idx.len() == 2 => {
                        if idx[0] == idx[1] { h.top() } else { h.bot() }
                    }
                    None => h.bot(),
                }
            }
            Formula::SetAtom(x, t) => {
                let i = self.term(t)?;
                match x {
                    SetRef::Bound(k) => self.sets[self.sets.len() - 1 - k][i],
                    SetRef::Free(name) => self.v.get(name).ok_or_else(|| Error::UncoveredVariable(name.clone()))?[i],
                }
            }
            Formula::Bin(k, l, r) => {
                let (a, b) = (self.eval(l)?, self.eval(r)?);
                match k {
                    Conn::And => h.meet(a, b),
                    Conn::Or => h.join(a, b),
                    Conn::Imp => h.imp(a, b),
                }
            }
            Formula::Quant(q, body) => {
                let mut acc = if *q == Quant::All { h.top() } else { h.bot() };
                for i in 0..self.s.universe.len() {
                    self.terms.push(i);
                    let val = self.eval(body);
                    self.terms.pop();
                    acc = if *q == Quant::All { h.meet(acc, val?) } else { h.join(acc, val?) };
                }
                acc
            }
            Formula::SetQuant(q, body) => {
                let mut acc = if *q == Quant::All { h.top() } else { h.bot() };
                for k in 0..self.domain.len() {
                    self.sets.push(self.domain[k].clone());
                    let val = self.eval(body);
                    self.sets.pop();
                    acc = if *q == Quant::All { h.meet(acc, val?) } else { h.join(acc, val?) };
                }
                acc
            }
        })
    }
}

fn env<'a>(s: &'a Structure, v: &'a Valuation, sigma: &'a Assignment, domain: Vec<SetValue>) -> Env<'a> {
    Env { s, v, sigma, terms: Vec::new(), sets: Vec::new(), domain }
}

fn needs_domain(f: &Formula) -> bool {
    match f {
        Formula::SetQuant(..) => true,
        Formula::Bin(_, l, r) => needs_domain(l) || needs_domain(r),
        Formula::Quant(_, b) => needs_domain(b),
        _ => false,
    }
}

/// `V(φ)` as an element index of the algebra.
pub fn interpret(f: &Formula, s: &Structure, v: &Valuation, sigma: &Assignment) -> Result<usize> {
    let domain = if needs_domain(f) { s.domain_members() } else { Vec::new() };
    env(s, v, sigma, domain).eval(f)
}

/// `t ↦ V(τ(t))` as a function on the universe.
pub fn interpret_abstract(tau: &Abstract, s: &Structure, v: &Valuation, sigma: &Assignment) -> Result<SetValue> {
    let domain = if needs_domain(tau.open_body()) { s.domain_members() } else { Vec::new() };
    let mut e = env(s, v, sigma, domain);
    (0..s.universe.len())
        .map(|i| {
            e.terms.push(i);
            let r = e.eval(tau.open_body());
            e.terms.pop();
            r
        })
        .collect()
}

/// `V(Γ) = ⋀ V(φ)` and `V(Π) = ⋁ V(ψ)` for one valuation and assignment.
pub fn sequent_values(seq: &Sequent, s: &Structure, v: &Valuation, sigma: &Assignment) -> Result<(usize, usize)> {
    let h = &s.algebra;
    let mut ant = h.top();
    for f in &seq.ant {
        ant = h.meet(ant, interpret(f, s, v, sigma)?);
    }
    let suc = match &seq.suc {
        Some(f) => interpret(f, s, v, sigma)?,
        None => h.bot(),
    };
    Ok((ant, suc))
}

/// Whether `V(Γ) ≤ V(Π)` for every valuation of the free set variables over
/// `D` and every assignment of the free term variables over `M`.
pub fn check_validity(seq: &Sequent, s: &Structure) -> Result<bool> {
    let set_vars: Vec<String> = seq.free_set_vars().into_iter().collect();
    let term_vars: Vec<String> = seq.free_term_vars().into_iter().collect();
    let members = s.domain_members();
    for choice in tuples(members.len(), set_vars.len()) {
        let mut v = Valuation::new();
        for (x, &k) in set_vars.iter().zip(&choice) {
            v.sets.insert(x.clone(), members[k].clone());
        }
        for ts in tuples(s.universe.len(), term_vars.len()) {
            let sigma: Assignment = term_vars.iter().zip(&ts).map(|(x, &i)| (x.clone(), s.universe[i].clone())).collect();
            let (a, b) = sequent_values(seq, s, &v, &sigma)?;
            if !s.algebra.leq(a, b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The one-constant language `{*}` over the three-element chain.
pub fn star_structure(algebra: HeytingAlgebra) -> Structure {
    let lang = Language::new().with_function("*", 0);
    Structure::full(algebra, &lang, 0).expect("one closed term")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::formula;

    fn f(s: &str) -> Formula {
        formula(s).unwrap()
    }

    #[test]
    fn closed_term_universe() {
        let lang = Language::pa();
        let ts: Vec<String> = closed_terms(&lang, 2).iter().map(|t| t.to_string()).collect();
        assert_eq!(ts, vec!["0", "s(0)", "s(s(0))"]);
        assert_eq!(tuples(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn excluded_middle_values_on_three_chain() {
        let s = star_structure(HeytingAlgebra::three_chain());
        let phi = f("(X(*) -> bot) | X(*)");
        let sigma = Assignment::new();
        let vals: Vec<usize> =
            (0..3).map(|h| interpret(&phi, &s, &Valuation::new().with("X", vec![h]), &sigma).unwrap()).collect();
        assert_eq!(vals, vec![2, 1, 2]);
        let q = f("All X. (X(*) -> bot) | X(*)");
        assert_eq!(s.algebra.label(interpret(&q, &s, &Valuation::new(), &sigma).unwrap()), "0.5");
        assert_eq!(interpret(&Formula::Bot, &s, &Valuation::new(), &sigma).unwrap(), 0);
    }

    #[test]
    fn validity() {
        let mut s = star_structure(HeytingAlgebra::three_chain());
        s.set_predicate("p", &[], 1).unwrap();
        assert!(check_validity(&Sequent::with_succedent([f("p")], f("p")), &s).unwrap());
        assert!(!check_validity(&Sequent::with_succedent([], f("p | (p -> bot)")), &s).unwrap());
        assert!(check_validity(&Sequent::with_succedent([f("X(*)")], f("ex x. X(x)")), &s).unwrap());
    }

    #[test]
    fn uncovered_variables() {
        let s = star_structure(HeytingAlgebra::chain(2));
        let err = interpret(&f("p(y)"), &s, &Valuation::new(), &Assignment::new()).unwrap_err();
        assert_eq!(err, Error::UncoveredVariable("y".into()));
        let err = interpret(&f("Z(*)"), &s, &Valuation::new(), &Assignment::new()).unwrap_err();
        assert_eq!(err, Error::UncoveredVariable("Z".into()));
    }
}
