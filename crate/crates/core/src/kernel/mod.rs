//! Sequents, witness-carrying derivations and the rule checker for LI,
//! LIP(n) and LIT.

pub mod build;
mod check;
mod format;
mod transform;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::syntax::{Abstract, Formula, Term};

pub use check::{check, check_ok, Violation};
pub use format::{parse_derivation, parse_sequent, print_derivation};
pub(crate) use transform::{carries_succedent, eigen, freshen_root};
pub use transform::{rename_eigenvariables, substitute_derivation, weaken, weaken_succedent, Binding, Fresh};

/// `Γ ⇒ Π` with a set antecedent and at most one succedent formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub ant: BTreeSet<Formula>,
    pub suc: Option<Formula>,
}

impl Sequent {
    pub fn new(ant: impl IntoIterator<Item = Formula>, suc: Option<Formula>) -> Sequent {
        Sequent { ant: ant.into_iter().collect(), suc }
    }

    pub fn with_succedent(ant: impl IntoIterator<Item = Formula>, suc: Formula) -> Sequent {
        Sequent::new(ant, Some(suc))
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.ant.iter().chain(self.suc.iter())
    }

    pub fn free_term_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.formulas().for_each(|f| f.collect_free_term_vars(&mut out));
        out
    }

    pub fn free_set_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.formulas().for_each(|f| f.collect_free_set_vars(&mut out));
        out
    }

    pub fn subst_term(&self, x: &str, t: &Term) -> Sequent {
        Sequent {
            ant: self.ant.iter().map(|f| f.subst_term(x, t)).collect(),
            suc: self.suc.as_ref().map(|f| f.subst_term(x, t)),
        }
    }

    pub fn subst_set(&self, x: &str, tau: &Abstract) -> Sequent {
        Sequent {
            ant: self.ant.iter().map(|f| f.subst_set(x, tau)).collect(),
            suc: self.suc.as_ref().map(|f| f.subst_set(x, tau)),
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ant: Vec<String> = self.ant.iter().map(ToString::to_string).collect();
        f.write_str(&ant.join(", "))?;
        if !ant.is_empty() {
            f.write_str(" ")?;
        }
        match &self.suc {
            Some(s) => write!(f, "|- {s}"),
            None => f.write_str("|-"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Calculus {
    Li,
    Lip(u32),
    Lit,
}

impl Calculus {
    /// Whether a formula is admitted by the calculus.
    pub fn admits(self, f: &Formula) -> bool {
        match self {
            Calculus::Li => f.level() == crate::syntax::Level::FIRST_ORDER,
            Calculus::Lip(n) => f.level().within(n as i32),
            Calculus::Lit => true,
        }
    }
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Calculus::Li => f.write_str("LI"),
            Calculus::Lip(n) => write!(f, "LIP{n}"),
            Calculus::Lit => f.write_str("LIT"),
        }
    }
}

impl FromStr for Calculus {
    type Err = String;

    fn from_str(s: &str) -> Result<Calculus, String> {
        match s {
            "LI" => Ok(Calculus::Li),
            "LIT" => Ok(Calculus::Lit),
            _ => s
                .strip_prefix("LIP")
                .and_then(|n| n.parse().ok())
                .map(Calculus::Lip)
                .ok_or_else(|| format!("unknown calculus {s}; expected LI, LIP<n> or LIT")),
        }
    }
}

/// Rule tag plus the witnesses the checker needs. Left rules name their
/// main formula because antecedents are sets and the main formula may
/// also survive in the premises.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Id,
    Cut(Formula),
    BotL,
    BotR,
    AndL { main: Formula, i: u8 },
    AndR,
    OrL { main: Formula },
    OrR(u8),
    ImpL { main: Formula },
    ImpR,
    AllL { main: Formula, t: Term },
    AllR(String),
    ExL { main: Formula, y: String },
    ExR(Term),
    All2L { main: Formula, tau: Abstract },
    All2R(String),
    Ex2L { main: Formula, y: String },
    Ex2R(Abstract),
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Id => "Id",
            Rule::Cut(_) => "Cut",
            Rule::BotL => "BotL",
            Rule::BotR => "BotR",
            Rule::AndL { .. } => "AndL",
            Rule::AndR => "AndR",
            Rule::OrL { .. } => "OrL",
            Rule::OrR(_) => "OrR",
            Rule::ImpL { .. } => "ImpL",
            Rule::ImpR => "ImpR",
            Rule::AllL { .. } => "AllL",
            Rule::AllR(_) => "AllR",
            Rule::ExL { .. } => "ExL",
            Rule::ExR(_) => "ExR",
            Rule::All2L { .. } => "All2L",
            Rule::All2R(_) => "All2R",
            Rule::Ex2L { .. } => "Ex2L",
            Rule::Ex2R(_) => "Ex2R",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Rule::Id | Rule::BotL => 0,
            Rule::Cut(_) | Rule::AndR | Rule::OrL { .. } | Rule::ImpL { .. } => 2,
            _ => 1,
        }
    }

    /// Main formula of a left rule.
    pub fn left_main(&self) -> Option<&Formula> {
        match self {
            Rule::AndL { main, .. }
            | Rule::OrL { main }
            | Rule::ImpL { main }
            | Rule::AllL { main, .. }
            | Rule::ExL { main, .. }
            | Rule::All2L { main, .. }
            | Rule::Ex2L { main, .. } => Some(main),
            _ => None,
        }
    }

    pub fn is_second_order(&self) -> bool {
        matches!(self, Rule::All2L { .. } | Rule::All2R(_) | Rule::Ex2L { .. } | Rule::Ex2R(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    pub rule: Rule,
    pub conclusion: Sequent,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn new(rule: Rule, conclusion: Sequent, premises: Vec<Derivation>) -> Derivation {
        Derivation { rule, conclusion, premises }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Derivation::height).max().unwrap_or(0)
    }

    pub fn cut_count(&self) -> usize {
        usize::from(matches!(self.rule, Rule::Cut(_))) + self.premises.iter().map(Derivation::cut_count).sum::<usize>()
    }

    pub fn is_cut_free(&self) -> bool {
        self.cut_count() == 0
    }

    /// Largest rank among cut formulas, `None` if cut-free.
    pub fn max_cut_rank(&self) -> Option<usize> {
        let own = match &self.rule {
            Rule::Cut(f) => Some(f.rank()),
            _ => None,
        };
        self.premises.iter().filter_map(Derivation::max_cut_rank).chain(own).max()
    }

    /// Every rule tag in the tree, pre-order.
    pub fn rules(&self) -> Vec<&Rule> {
        let mut out = vec![&self.rule];
        for p in &self.premises {
            out.extend(p.rules());
        }
        out
    }

    /// Free variables of every sequent in the tree, including eigenvariables.
    pub fn all_term_vars(&self) -> BTreeSet<String> {
        let mut out = self.conclusion.free_term_vars();
        self.premises.iter().for_each(|p| out.extend(p.all_term_vars()));
        out
    }

    pub fn all_set_vars(&self) -> BTreeSet<String> {
        let mut out = self.conclusion.free_set_vars();
        self.premises.iter().for_each(|p| out.extend(p.all_set_vars()));
        out
    }
}
