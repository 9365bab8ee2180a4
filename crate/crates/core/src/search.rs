//! Bounded backward search for cut-free LI derivations.
//!
//! Invertible rules are applied eagerly and the main formula is dropped;
//! `ImpL` and `AllL` keep their main formula in the premise that needs it.
//! Branches are cut when a sequent repeats along the path. The search runs
//! with iterative deepening, so the first proof found is a shallowest one.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::kernel::build::{self, widen};
use crate::kernel::{Derivation, Fresh, Sequent};
use crate::syntax::{Conn, Formula, Level, Quant, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximal number of sequents along a branch.
    pub max_depth: usize,
    /// Maximal number of sequents visited overall.
    pub max_nodes: usize,
    /// Extra instantiation terms for `AllL` and `ExR`.
    pub terms: Vec<Term>,
}

impl Default for SearchBudget {
    fn default() -> SearchBudget {
        SearchBudget { max_depth: 12, max_nodes: 200_000, terms: Vec::new() }
    }
}

impl SearchBudget {
    pub fn depth(max_depth: usize) -> SearchBudget {
        SearchBudget { max_depth, ..SearchBudget::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Derivation),
    NotFoundWithinBudget { nodes: usize },
}

impl SearchOutcome {
    pub fn derivation(self) -> Option<Derivation> {
        match self {
            SearchOutcome::Found(d) => Some(d),
            SearchOutcome::NotFoundWithinBudget { .. } => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

/// Looks for a cut-free LI derivation of `goal`. Deterministic in its inputs.
pub fn search_cutfree(goal: &Sequent, budget: &SearchBudget) -> Result<SearchOutcome> {
    if let Some(f) = goal.formulas().find(|f| f.level() != Level::FIRST_ORDER) {
        return Err(Error::LevelViolation(format!("{f} is not first-order")));
    }
    let mut s = Search { budget, nodes: 0, branch: Vec::new() };
    for depth in 1..=budget.max_depth {
        if let Some(d) = s.prove(goal, depth) {
            return Ok(SearchOutcome::Found(d));
        }
        if s.nodes >= budget.max_nodes {
            break;
        }
    }
    Ok(SearchOutcome::NotFoundWithinBudget { nodes: s.nodes })
}

struct Search<'a> {
    budget: &'a SearchBudget,
    nodes: usize,
    branch: Vec<Sequent>,
}

fn seq(ant: BTreeSet<Formula>, suc: Option<Formula>) -> Sequent {
    Sequent { ant, suc }
}

fn replace(ant: &BTreeSet<Formula>, out: &Formula, ins: &[Formula]) -> BTreeSet<Formula> {
    let mut s = ant.clone();
    s.remove(out);
    s.extend(ins.iter().cloned());
    s
}

fn plus(ant: &BTreeSet<Formula>, f: &Formula) -> BTreeSet<Formula> {
    let mut s = ant.clone();
    s.insert(f.clone());
    s
}

fn parts(f: &Formula) -> (Formula, Formula) {
    match f {
        Formula::Bin(_, l, r) => ((**l).clone(), (**r).clone()),
        _ => unreachable!("binary formula"),
    }
}

fn eigen_name(goal: &Sequent) -> String {
    Fresh::new(goal.free_term_vars()).next("y")
}

impl Search<'_> {
    fn candidates(&self, goal: &Sequent) -> Vec<Term> {
        // terms of the whole branch, so that splitting a context does not lose witnesses
        let mut ts: BTreeSet<Term> = self.budget.terms.iter().cloned().collect();
        let mut found = Vec::new();
        for s in self.branch.iter().chain([goal]) {
            s.formulas().for_each(|f| f.collect_closed_terms(&mut found));
        }
        ts.extend(found);
        if ts.is_empty() {
            ts.insert(Term::var(eigen_name(goal)));
        }
        ts.into_iter().collect()
    }

    fn finish(d: Derivation, goal: &Sequent) -> Derivation {
        let d = widen(&d, &goal.ant);
        debug_assert_eq!(&d.conclusion, goal);
        d
    }

    fn prove(&mut self, goal: &Sequent, depth: usize) -> Option<Derivation> {
        if depth == 0 || self.nodes >= self.budget.max_nodes {
            return None;
        }
        self.nodes += 1;
        if let Some(s) = &goal.suc {
            if goal.ant.contains(s) {
                return Some(build::id(goal.ant.iter().cloned(), s));
            }
        }
        if goal.ant.contains(&Formula::Bot) {
            return Some(build::bot_l(goal.ant.iter().cloned(), goal.suc.clone()));
        }
        if self.branch.contains(goal) {
            return None;
        }
        self.branch.push(goal.clone());
        let out = self.expand(goal, depth - 1).map(|d| Search::finish(d, goal));
        self.branch.pop();
        out
    }

    fn expand(&mut self, goal: &Sequent, depth: usize) -> Option<Derivation> {
        let ant = &goal.ant;
        let suc = &goal.suc;
        // invertible left rules
        for f in ant {
            match f {
                Formula::Bin(Conn::And, ..) => {
                    let (a, b) = parts(f);
                    let d = self.prove(&seq(replace(ant, f, &[a, b]), suc.clone()), depth)?;
                    return Some(build::and_l_both(d, f));
                }
                Formula::Quant(Quant::Ex, _) => {
                    let y = eigen_name(goal);
                    let inst = f.instantiate(&Term::var(y.clone())).expect("quantifier");
                    let d = self.prove(&seq(replace(ant, f, &[inst]), suc.clone()), depth)?;
                    return Some(build::ex_l(d, f, &y));
                }
                Formula::Bin(Conn::Or, ..) => {
                    let (a, b) = parts(f);
                    let d1 = self.prove(&seq(replace(ant, f, &[a]), suc.clone()), depth)?;
                    let d2 = self.prove(&seq(replace(ant, f, &[b]), suc.clone()), depth)?;
                    return Some(build::or_l(d1, d2, f));
                }
                _ => {}
            }
        }
        // invertible right rules
        match suc {
            Some(Formula::Bot) => {
                let d = self.prove(&seq(ant.clone(), None), depth)?;
                return Some(build::bot_r(d));
            }
            Some(f @ Formula::Bin(Conn::Imp, ..)) => {
                let (a, b) = parts(f);
                let d = self.prove(&seq(plus(ant, &a), Some(b)), depth)?;
                return Some(build::imp_r(d, &a));
            }
            Some(f @ Formula::Bin(Conn::And, ..)) => {
                let (a, b) = parts(f);
                let d1 = self.prove(&seq(ant.clone(), Some(a)), depth)?;
                let d2 = self.prove(&seq(ant.clone(), Some(b)), depth)?;
                return Some(build::and_r(d1, d2));
            }
            Some(f @ Formula::Quant(Quant::All, _)) => {
                let y = eigen_name(goal);
                let inst = f.instantiate(&Term::var(y.clone())).expect("quantifier");
                let d = self.prove(&seq(ant.clone(), Some(inst)), depth)?;
                return Some(build::all_r(d, &y));
            }
            _ => {}
        }
        // choices
        let terms = self.candidates(goal);
        match suc {
            Some(f @ Formula::Bin(Conn::Or, ..)) => {
                let (a, b) = parts(f);
                if let Some(d) = self.prove(&seq(ant.clone(), Some(a.clone())), depth) {
                    return Some(build::or_r(d, 1, &b));
                }
                if let Some(d) = self.prove(&seq(ant.clone(), Some(b)), depth) {
                    return Some(build::or_r(d, 2, &a));
                }
            }
            Some(f @ Formula::Quant(Quant::Ex, _)) => {
                for t in &terms {
                    let inst = f.instantiate(t).expect("quantifier");
                    if let Some(d) = self.prove(&seq(ant.clone(), Some(inst)), depth) {
                        return Some(build::ex_r(d, f, t));
                    }
                }
            }
            _ => {}
        }
        for f in ant {
            if let Formula::Bin(Conn::Imp, ..) = f {
                let (a, b) = parts(f);
                if ant.contains(&b) {
                    continue;
                }
                let Some(d1) = self.prove(&seq(ant.clone(), Some(a)), depth) else { continue };
                let Some(d2) = self.prove(&seq(replace(ant, f, &[b]), suc.clone()), depth) else { continue };
                return Some(build::imp_l(d1, d2, f));
            }
        }
        for f in ant {
            if let Formula::Quant(Quant::All, _) = f {
                for t in &terms {
                    let inst = f.instantiate(t).expect("quantifier");
                    if ant.contains(&inst) {
                        continue;
                    }
                    if let Some(d) = self.prove(&seq(plus(ant, &inst), suc.clone()), depth) {
                        return Some(build::all_l(d, f, t));
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check, Calculus, Rule};
    use crate::syntax::formula;

    fn f(s: &str) -> Formula {
        formula(s).unwrap()
    }

    fn goal(ant: &[&str], suc: Option<&str>) -> Sequent {
        Sequent::new(ant.iter().map(|s| f(s)), suc.map(f))
    }

    fn found(g: &Sequent, depth: usize) -> Derivation {
        let d = search_cutfree(g, &SearchBudget::depth(depth)).unwrap().derivation().expect("provable");
        assert!(check(&d, Calculus::Li).is_empty(), "{:?}", check(&d, Calculus::Li));
        assert!(d.is_cut_free());
        assert_eq!(&d.conclusion, g);
        d
    }

    #[test]
    fn identity_implication() {
        let d = found(&goal(&[], Some("p -> p")), 3);
        assert_eq!(d.size(), 2);
        assert_eq!(d.rule, Rule::ImpR);
    }

    #[test]
    fn negation_elimination() {
        let d = found(&goal(&["q", "q -> bot"], Some("r")), 5);
        assert!(matches!(d.rule, Rule::ImpL { .. }));
        assert_eq!(d.premises[1].rule, Rule::BotL);
    }

    #[test]
    fn excluded_middle_is_not_found() {
        let out = search_cutfree(&goal(&[], Some("p | (p -> bot)")), &SearchBudget::depth(8)).unwrap();
        assert!(!out.is_found());
    }

    #[test]
    fn double_negation_of_excluded_middle() {
        found(&goal(&[], Some("((p | (p -> bot)) -> bot) -> bot")), 10);
    }

    #[test]
    fn quantifiers_use_goal_terms() {
        found(&goal(&["all x. p(x)"], Some("p(s(c))")), 4);
        // no term in sight: a fresh variable serves as witness
        let d = found(&goal(&["all x. p(x)"], Some("ex x. p(x)")), 4);
        assert!(matches!(&d.rule, Rule::ExR(Term::Var(_))));
        let g = goal(&["all x. p(x)"], Some("ex x. p(x) & q(x)"));
        let b = SearchBudget { terms: vec![Term::constant("c")], ..SearchBudget::depth(4) };
        assert!(!search_cutfree(&g, &b).unwrap().is_found());
        found(&goal(&["ex x. all y. r(x, y)"], Some("all y. ex x. r(x, y)")), 8);
        let out = search_cutfree(&goal(&["all y. ex x. r(x, y)"], Some("ex x. all y. r(x, y)")), &SearchBudget::depth(8)).unwrap();
        assert!(!out.is_found());
    }

    #[test]
    fn rejects_second_order_goals() {
        assert!(search_cutfree(&goal(&[], Some("All X. X(c) -> X(c)")), &SearchBudget::default()).is_err());
    }
}
