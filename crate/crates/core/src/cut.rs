//! Rank-stratified cut elimination for LI.
//!
//! Each pass removes every cut of the current maximal rank `m`, producing new
//! cuts only on proper subformulas, so the maximal rank strictly drops. Within
//! a pass, a top-most cut is pushed upward: first through the right premise
//! while it does not use the cut formula principally, then through the left
//! premise, and finally replaced by cuts on the immediate subformulas.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::kernel::build::{self, widen};
use crate::kernel::{
    carries_succedent, check, eigen, freshen_root, substitute_derivation, weaken_succedent, Binding, Calculus, Derivation,
    Rule, Sequent,
};
use crate::syntax::{Formula, Term};

/// Statistics of one pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PassReport {
    /// Rank of the cuts removed by this pass.
    pub rank: usize,
    pub max_rank_after: Option<usize>,
    pub nodes_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutReport {
    pub max_rank_before: Option<usize>,
    pub nodes_before: usize,
    pub passes: Vec<PassReport>,
    pub nodes_after: usize,
}

/// Returns a cut-free LI derivation with the same endsequent.
pub fn eliminate_cuts(d: &Derivation) -> Result<Derivation> {
    eliminate_cuts_with_report(d).map(|(out, _)| out)
}

pub fn eliminate_cuts_with_report(d: &Derivation) -> Result<(Derivation, CutReport)> {
    let violations = check(d, Calculus::Li);
    if let Some(v) = violations.first() {
        return Err(Error::InvalidDerivation(format!("not an LI derivation: {v}")));
    }
    let mut report = CutReport { max_rank_before: d.max_cut_rank(), nodes_before: d.size(), passes: Vec::new(), nodes_after: 0 };
    let mut cur = d.clone();
    while let Some(m) = cur.max_cut_rank() {
        cur = pass(&cur, m);
        let after = cur.max_cut_rank();
        debug_assert!(after.is_none_or(|a| a < m), "pass did not lower the cut rank");
        report.passes.push(PassReport { rank: m, max_rank_after: after, nodes_after: cur.size() });
    }
    report.nodes_after = cur.size();
    debug_assert_eq!(cur.conclusion, d.conclusion);
    Ok((cur, report))
}

/// Removes the cuts of rank `m` from a derivation whose cuts all have rank ≤ m.
fn pass(d: &Derivation, m: usize) -> Derivation {
    let premises: Vec<Derivation> = d.premises.iter().map(|p| pass(p, m)).collect();
    match &d.rule {
        Rule::Cut(phi) if phi.rank() == m => {
            let out = reduce(&premises[0], &premises[1], phi);
            debug_assert_eq!(out.conclusion, d.conclusion);
            out
        }
        _ => Derivation { rule: d.rule.clone(), conclusion: d.conclusion.clone(), premises },
    }
}

fn union(a: &BTreeSet<Formula>, b: &BTreeSet<Formula>) -> BTreeSet<Formula> {
    a.union(b).cloned().collect()
}

fn without(a: &BTreeSet<Formula>, f: &Formula) -> BTreeSet<Formula> {
    let mut s = a.clone();
    s.remove(f);
    s
}

fn vars_of(s: &BTreeSet<Formula>, suc: Option<&Formula>) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for f in s.iter().chain(suc) {
        f.collect_free_term_vars(&mut out);
    }
    out
}

/// Formulas a rule adds to the antecedent of premise `i`.
fn active(rule: &Rule, conclusion: &Sequent, i: usize) -> BTreeSet<Formula> {
    let sub = |f: &Formula, right: bool| match f {
        Formula::Bin(_, l, r) => if right { (**r).clone() } else { (**l).clone() },
        _ => unreachable!("binary main formula"),
    };
    let one = |f: Formula| [f].into_iter().collect();
    match rule {
        Rule::Cut(psi) if i == 1 => one(psi.clone()),
        Rule::AndL { main, i: k } => one(sub(main, *k == 2)),
        Rule::OrL { main } => one(sub(main, i == 1)),
        Rule::ImpL { main } if i == 1 => one(sub(main, true)),
        Rule::ImpR => one(sub(conclusion.suc.as_ref().expect("implication"), false)),
        Rule::AllL { main, t } => one(main.instantiate(t).expect("quantifier")),
        Rule::ExL { main, y } => one(main.instantiate(&Term::var(y.clone())).expect("quantifier")),
        _ => BTreeSet::new(),
    }
}

/// The right premise uses `phi` as its principal formula.
fn principal_right(r: &Derivation, phi: &Formula) -> bool {
    match &r.rule {
        Rule::Id => r.conclusion.suc.as_ref() == Some(phi),
        Rule::BotL => *phi == Formula::Bot,
        rule => rule.left_main() == Some(phi),
    }
}

/// Rebuilds the last rule of `d` over new premises with conclusion antecedent `target`.
fn rebuild(d: &Derivation, target: &BTreeSet<Formula>, suc: Option<Formula>, premises: Vec<Derivation>) -> Derivation {
    let premises = premises
        .into_iter()
        .enumerate()
        .map(|(i, p)| widen(&p, &union(target, &active(&d.rule, &d.conclusion, i))))
        .collect();
    Derivation { rule: d.rule.clone(), conclusion: Sequent { ant: target.clone(), suc }, premises }
}

/// From `l: Γ ⇒ φ` and `r: Δ ⇒ Π` with only lower-rank cuts, derives
/// `Γ ∪ (Δ \ {φ}) ⇒ Π` with only lower-rank cuts.
fn reduce(l: &Derivation, r: &Derivation, phi: &Formula) -> Derivation {
    debug_assert_eq!(l.conclusion.suc.as_ref(), Some(phi));
    let delta = &r.conclusion.ant;
    let target = union(&l.conclusion.ant, &without(delta, phi));
    if !delta.contains(phi) {
        return widen(r, &target);
    }
    let r = freshen_root(r, &vars_of(&l.conclusion.ant, None));
    let out = if !principal_right(&r, phi) {
        permute_right(l, &r, phi, &target)
    } else if r.rule == Rule::Id {
        widen(l, &target)
    } else {
        match &l.rule {
            Rule::Id => widen(&r, &target),
            Rule::BotL => build::bot_l(target.iter().cloned(), r.conclusion.suc.clone()),
            Rule::Cut(_) => permute_left(l, &r, phi, &target),
            rule if rule.left_main().is_some() => permute_left(l, &r, phi, &target),
            _ => principal(l, &r, phi),
        }
    };
    debug_assert!(out.conclusion.ant.is_subset(&target), "reduction left extra formulas");
    widen(&out, &target)
}

fn permute_right(l: &Derivation, r: &Derivation, phi: &Formula, target: &BTreeSet<Formula>) -> Derivation {
    match r.rule {
        Rule::Id | Rule::BotL => return Derivation::new(r.rule.clone(), Sequent { ant: target.clone(), suc: r.conclusion.suc.clone() }, vec![]),
        _ => {}
    }
    let premises = r
        .premises
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if p.conclusion.ant.contains(phi) && !active(&r.rule, &r.conclusion, i).contains(phi) {
                debug_assert!(p.size() < r.size());
                reduce(l, p, phi)
            } else {
                p.clone()
            }
        })
        .collect();
    rebuild(r, target, r.conclusion.suc.clone(), premises)
}

fn permute_left(l: &Derivation, r: &Derivation, phi: &Formula, target: &BTreeSet<Formula>) -> Derivation {
    let l = freshen_root(l, &vars_of(&r.conclusion.ant, r.conclusion.suc.as_ref()));
    let pi = r.conclusion.suc.clone();
    let premises = l
        .premises
        .iter()
        .enumerate()
        .map(|(i, q)| if carries_succedent(&l.rule, i) { reduce(q, r, phi) } else { q.clone() })
        .collect();
    rebuild(&l, target, pi, premises)
}

/// Both premises introduce `phi`: clean the right premises of further
/// occurrences of `phi`, then cut on the immediate subformulas.
fn principal(l: &Derivation, r: &Derivation, phi: &Formula) -> Derivation {
    debug_assert!(eigen(&r.rule).is_none_or(|y| !vars_of(&l.conclusion.ant, None).contains(y)));
    let ps: Vec<Derivation> = r
        .premises
        .iter()
        .map(|p| if p.conclusion.ant.contains(phi) { reduce(l, p, phi) } else { p.clone() })
        .collect();
    let lp = &l.premises;
    match (&l.rule, &r.rule) {
        (Rule::AndR, Rule::AndL { i, .. }) => build::cut(lp[usize::from(*i) - 1].clone(), ps[0].clone()),
        (Rule::OrR(i), Rule::OrL { .. }) => build::cut(lp[0].clone(), ps[usize::from(*i) - 1].clone()),
        (Rule::ImpR, Rule::ImpL { .. }) => {
            let mid = build::cut(ps[0].clone(), lp[0].clone());
            build::cut(mid, ps[1].clone())
        }
        (Rule::AllR(y), Rule::AllL { t, .. }) => {
            let inst = substitute_derivation(&lp[0], &Binding::Term(y.clone(), t.clone()), Calculus::Li)
                .expect("term substitution in LI");
            build::cut(inst, ps[0].clone())
        }
        (Rule::ExR(t), Rule::ExL { y, .. }) => {
            let inst = substitute_derivation(&ps[0], &Binding::Term(y.clone(), t.clone()), Calculus::Li)
                .expect("term substitution in LI");
            build::cut(lp[0].clone(), inst)
        }
        (Rule::BotR, Rule::BotL) => match &r.conclusion.suc {
            Some(pi) => weaken_succedent(&lp[0], pi),
            None => lp[0].clone(),
        },
        (a, b) => unreachable!("no principal reduction for {} against {}", a.name(), b.name()),
    }
}
