//! Admissible transformations: weakening, substitution, eigenvariable renaming.

use std::collections::BTreeSet;

use super::{Calculus, Derivation, Rule, Sequent};
use crate::error::{Error, Result};
use crate::syntax::{Abstract, Formula, Term};

/// Supply of variable names not yet in use.
#[derive(Clone, Debug, Default)]
pub struct Fresh {
    used: BTreeSet<String>,
}

impl Fresh {
    pub fn new(used: impl IntoIterator<Item = String>) -> Fresh {
        Fresh { used: used.into_iter().collect() }
    }

    pub fn for_derivation(d: &Derivation) -> Fresh {
        let mut f = Fresh::new(d.all_term_vars());
        f.avoid(d.all_set_vars());
        f.avoid(eigenvariables(d));
        f
    }

    pub fn avoid(&mut self, names: impl IntoIterator<Item = String>) {
        self.used.extend(names);
    }

    /// `stem0`, `stem1`, ... skipping used names; the result becomes used.
    pub fn next(&mut self, stem: &str) -> String {
        let stem = stem.trim_end_matches(|c: char| c.is_ascii_digit());
        let name = (0..).map(|k| format!("{stem}{k}")).find(|n| !self.used.contains(n)).expect("unbounded names");
        self.used.insert(name.clone());
        name
    }
}

fn eigenvariables(d: &Derivation) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for r in d.rules() {
        if let Some(y) = eigen(r) {
            out.insert(y.to_string());
        }
    }
    out
}

pub(crate) fn eigen(r: &Rule) -> Option<&str> {
    match r {
        Rule::AllR(y) | Rule::ExL { y, .. } | Rule::All2R(y) | Rule::Ex2L { y, .. } => Some(y),
        _ => None,
    }
}

fn set_eigen(r: &mut Rule, name: String) {
    match r {
        Rule::AllR(y) | Rule::ExL { y, .. } | Rule::All2R(y) | Rule::Ex2L { y, .. } => *y = name,
        _ => unreachable!("not an eigenvariable rule"),
    }
}

/// A term or set variable together with its replacement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Binding {
    Term(String, Term),
    Set(String, Abstract),
}

impl Binding {
    fn var(&self) -> &str {
        match self {
            Binding::Term(x, _) | Binding::Set(x, _) => x,
        }
    }

    /// Variables of the replacement that an eigenvariable must not equal.
    fn captured(&self) -> BTreeSet<String> {
        match self {
            Binding::Term(_, t) => t.vars(),
            Binding::Set(_, tau) => {
                let mut s = tau.free_term_vars();
                s.extend(tau.free_set_vars());
                s
            }
        }
    }

    fn formula(&self, f: &Formula) -> Formula {
        match self {
            Binding::Term(x, t) => f.subst_term(x, t),
            Binding::Set(x, tau) => f.subst_set(x, tau),
        }
    }

    fn term(&self, u: &Term) -> Term {
        match self {
            Binding::Term(x, t) => u.subst_var(x, t),
            Binding::Set(..) => u.clone(),
        }
    }

    fn abs(&self, tau: &Abstract) -> Abstract {
        match self {
            Binding::Term(x, t) => tau.subst_term(x, t),
            Binding::Set(x, s) => tau.subst_set(x, s),
        }
    }

    fn sequent(&self, s: &Sequent) -> Sequent {
        match self {
            Binding::Term(x, t) => s.subst_term(x, t),
            Binding::Set(x, tau) => s.subst_set(x, tau),
        }
    }

    fn rule(&self, r: &Rule) -> Rule {
        match r {
            Rule::Cut(f) => Rule::Cut(self.formula(f)),
            Rule::AndL { main, i } => Rule::AndL { main: self.formula(main), i: *i },
            Rule::OrL { main } => Rule::OrL { main: self.formula(main) },
            Rule::ImpL { main } => Rule::ImpL { main: self.formula(main) },
            Rule::AllL { main, t } => Rule::AllL { main: self.formula(main), t: self.term(t) },
            Rule::ExL { main, y } => Rule::ExL { main: self.formula(main), y: y.clone() },
            Rule::ExR(t) => Rule::ExR(self.term(t)),
            Rule::All2L { main, tau } => Rule::All2L { main: self.formula(main), tau: self.abs(tau) },
            Rule::Ex2L { main, y } => Rule::Ex2L { main: self.formula(main), y: y.clone() },
            Rule::Ex2R(tau) => Rule::Ex2R(self.abs(tau)),
            other => other.clone(),
        }
    }
}

fn rename_var(d: &Derivation, old: &str, new: &str, is_set: bool, fresh: &mut Fresh) -> Derivation {
    let b = if is_set {
        Binding::Set(old.into(), Abstract::set_var(new))
    } else {
        Binding::Term(old.into(), Term::var(new))
    };
    subst(d, &b, fresh)
}

fn is_set_rule(r: &Rule) -> bool {
    matches!(r, Rule::All2R(_) | Rule::Ex2L { .. })
}

fn subst(d: &Derivation, b: &Binding, fresh: &mut Fresh) -> Derivation {
    let mut rule = d.rule.clone();
    let mut premises = d.premises.clone();
    if let Some(y) = eigen(&d.rule) {
        let set_kind = is_set_rule(&d.rule);
        let same_kind = set_kind == matches!(b, Binding::Set(..));
        if (same_kind && y == b.var()) || b.captured().contains(y) {
            let y2 = fresh.next(y);
            premises = premises.iter().map(|p| rename_var(p, y, &y2, set_kind, fresh)).collect();
            set_eigen(&mut rule, y2);
        }
    }
    Derivation {
        rule: b.rule(&rule),
        conclusion: b.sequent(&d.conclusion),
        premises: premises.iter().map(|p| subst(p, b, fresh)).collect(),
    }
}

/// Applies a term or set substitution to a whole derivation, renaming
/// eigenvariables that would clash. Set bindings must respect the level
/// bound of `calc`.
pub fn substitute_derivation(d: &Derivation, b: &Binding, calc: Calculus) -> Result<Derivation> {
    if let (Binding::Set(x, tau), Calculus::Lip(n)) = (b, calc) {
        if !tau.level().within(n as i32) {
            return Err(Error::LevelViolation(format!("abstract {tau} for {x} has level {} > {n}", tau.level())));
        }
    }
    if let (Binding::Set(x, _), Calculus::Li) = (b, calc) {
        return Err(Error::LevelViolation(format!("set substitution for {x} in LI")));
    }
    let mut fresh = Fresh::for_derivation(d);
    fresh.avoid(b.captured());
    fresh.avoid([b.var().to_string()]);
    Ok(subst(d, b, &mut fresh))
}

fn weaken_with(d: &Derivation, extra: &BTreeSet<Formula>, vars: &BTreeSet<String>, fresh: &mut Fresh) -> Derivation {
    let mut rule = d.rule.clone();
    let mut premises = d.premises.clone();
    if let Some(y) = eigen(&d.rule) {
        if vars.contains(y) {
            let y2 = fresh.next(y);
            let set_kind = is_set_rule(&d.rule);
            premises = premises.iter().map(|p| rename_var(p, y, &y2, set_kind, fresh)).collect();
            set_eigen(&mut rule, y2);
        }
    }
    let mut conclusion = d.conclusion.clone();
    conclusion.ant.extend(extra.iter().cloned());
    Derivation { rule, conclusion, premises: premises.iter().map(|p| weaken_with(p, extra, vars, fresh)).collect() }
}

/// From a derivation of `Γ ⇒ Π` builds one of `Γ ∪ extra ⇒ Π`.
pub fn weaken(d: &Derivation, extra: &BTreeSet<Formula>) -> Derivation {
    if extra.is_empty() {
        return d.clone();
    }
    let mut vars = BTreeSet::new();
    for f in extra {
        f.collect_free_term_vars(&mut vars);
        f.collect_free_set_vars(&mut vars);
    }
    let mut fresh = Fresh::for_derivation(d);
    fresh.avoid(vars.iter().cloned());
    weaken_with(d, extra, &vars, &mut fresh)
}

/// Whether premise `i` of a rule shares the conclusion's succedent.
pub(crate) fn carries_succedent(r: &Rule, i: usize) -> bool {
    match r {
        Rule::Cut(_) | Rule::ImpL { .. } => i == 1,
        Rule::BotR => false,
        _ => true,
    }
}

fn weaken_suc(d: &Derivation, psi: &Formula, vars: &BTreeSet<String>, fresh: &mut Fresh) -> Derivation {
    if d.conclusion.suc.is_some() {
        return d.clone();
    }
    let mut rule = d.rule.clone();
    let mut premises = d.premises.clone();
    if let Some(y) = eigen(&d.rule) {
        if vars.contains(y) {
            let y2 = fresh.next(y);
            let set_kind = is_set_rule(&d.rule);
            premises = premises.iter().map(|p| rename_var(p, y, &y2, set_kind, fresh)).collect();
            set_eigen(&mut rule, y2);
        }
    }
    let premises = premises
        .iter()
        .enumerate()
        .map(|(i, p)| if carries_succedent(&rule, i) { weaken_suc(p, psi, vars, fresh) } else { p.clone() })
        .collect();
    Derivation { rule, conclusion: Sequent { ant: d.conclusion.ant.clone(), suc: Some(psi.clone()) }, premises }
}

/// From a derivation of `Γ ⇒` builds one of `Γ ⇒ ψ`. Derivations with a
/// nonempty succedent are returned unchanged.
pub fn weaken_succedent(d: &Derivation, psi: &Formula) -> Derivation {
    let mut vars = psi.free_term_vars();
    vars.extend(psi.free_set_vars());
    let mut fresh = Fresh::for_derivation(d);
    fresh.avoid(vars.iter().cloned());
    weaken_suc(d, psi, &vars, &mut fresh)
}

/// Renames the eigenvariable of the last rule if it is in `avoid`.
pub(crate) fn freshen_root(d: &Derivation, avoid: &BTreeSet<String>) -> Derivation {
    match eigen(&d.rule) {
        Some(y) if avoid.contains(y) => {
            let mut fresh = Fresh::for_derivation(d);
            fresh.avoid(avoid.iter().cloned());
            let y2 = fresh.next(y);
            let set_kind = is_set_rule(&d.rule);
            let premises = d.premises.iter().map(|p| rename_var(p, y, &y2, set_kind, &mut fresh)).collect();
            let mut rule = d.rule.clone();
            set_eigen(&mut rule, y2);
            Derivation { rule, conclusion: d.conclusion.clone(), premises }
        }
        _ => d.clone(),
    }
}

/// Gives every eigenvariable a distinct name from `fresh`.
pub fn rename_eigenvariables(d: &Derivation, fresh: &mut Fresh) -> Derivation {
    let mut rule = d.rule.clone();
    let mut premises = d.premises.clone();
    if let Some(y) = eigen(&d.rule) {
        let y2 = fresh.next(y);
        let set_kind = is_set_rule(&d.rule);
        premises = premises.iter().map(|p| rename_var(p, y, &y2, set_kind, fresh)).collect();
        set_eigen(&mut rule, y2);
    }
    Derivation {
        rule,
        conclusion: d.conclusion.clone(),
        premises: premises.iter().map(|p| rename_eigenvariables(p, fresh)).collect(),
    }
}
