//! The two countermodel demonstrations: a Heyting-valued structure in which
//! the Ω-rule at level 0 is unsound, and the finite Ω-cut reduction.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::kernel::{Derivation, Sequent};
use crate::lattice::HeytingAlgebra;
use crate::omega::{certify, omega_cut_reduce, omega_membership, pool_subsets, OmegaVerdict};
use crate::search::{search_cutfree, SearchBudget, SearchOutcome};
use crate::semantics::{
    interpret, omega_soundness_probe, star_structure, Assignment, ProbeReport, SetValue, Structure, Valuation,
};
use crate::syntax::{formula_with, Formula};

#[derive(Clone, Debug)]
pub struct CounterDemo {
    pub structure: Structure,
    /// `∀X. (X(*) → ⊥) ∨ X(*)`.
    pub q: Formula,
    /// The value of the matrix under each valuation of `X`, in domain order.
    pub values: Vec<(SetValue, usize)>,
    /// `V(q)`, the meet of `values`.
    pub meet: usize,
    pub probe: ProbeReport,
}

fn parse(s: &str) -> Formula {
    formula_with(s, &["c"]).expect("fixed demo formula")
}

/// Evaluates `∀X. (X(*) → ⊥) ∨ X(*)` in the full structure over `{*}` and
/// probes the Ω-instance `q ⇒ ⊥` with contexts built from `⊥`, `p(*)` and `¬p(*)`.
pub fn counter_demo(algebra: HeytingAlgebra) -> Result<CounterDemo> {
    let structure = star_structure(algebra);
    let q = parse("All X. (X(*) -> bot) | X(*)");
    let matrix = parse("(X(*) -> bot) | X(*)");
    let sigma = Assignment::new();
    let mut values = Vec::new();
    for f in structure.domain_members() {
        let v = Valuation::new().with("X", f.clone());
        values.push((f, interpret(&matrix, &structure, &v, &sigma)?));
    }
    let meet = interpret(&q, &structure, &Valuation::new(), &sigma)?;
    let pool = pool_subsets(&[Formula::Bot, parse("p(*)"), parse("p(*) -> bot")])?;
    let probe = omega_soundness_probe(&structure, &q, &pool, &SearchBudget::depth(8))?;
    Ok(CounterDemo { structure, q, values, meet, probe })
}

#[derive(Clone, Debug)]
pub struct OmegaCutDemo {
    pub q: Formula,
    pub gamma: BTreeSet<Formula>,
    /// `Γ ⇒ φ(Y)`, found by search.
    pub left: Derivation,
    /// Premises `Δ, Γ ⇒ Π` of the Ω-inference, one per pool context.
    pub table: BTreeMap<BTreeSet<Formula>, Derivation>,
    /// The cut `Γ ⇒ Π` the reduction removes.
    pub endsequent: Sequent,
    pub reduced: Derivation,
}

/// Builds and reduces an Ω-cut: the left premise certifies `Γ ∈ |q|_0`, and the
/// Ω-inference has one premise `Δ, Γ ⇒ Π` per subset `Δ` of `pool`, each found by search.
pub fn omega_cut_instance(
    q: &Formula,
    gamma: &BTreeSet<Formula>,
    pi: &Formula,
    pool: &[Formula],
    budget: &SearchBudget,
) -> Result<OmegaCutDemo> {
    let OmegaVerdict::Member { derivation: left, .. } = omega_membership(q, gamma, None, budget)? else {
        return Err(Error::Precondition("no certificate for Γ within budget".into()));
    };
    certify(q, gamma, &left)?;
    let mut table = BTreeMap::new();
    for delta in pool_subsets(pool)? {
        let ant: BTreeSet<Formula> = delta.union(gamma).cloned().collect();
        let goal = Sequent::new(ant, Some(pi.clone()));
        match search_cutfree(&goal, budget)? {
            SearchOutcome::Found(d) => {
                table.insert(delta, d);
            }
            SearchOutcome::NotFoundWithinBudget { .. } => {
                return Err(Error::Precondition(format!("premise {goal} not found")));
            }
        }
    }
    let reduced = omega_cut_reduce(gamma, q, &left, &table)?;
    let endsequent = Sequent::new(gamma.clone(), Some(pi.clone()));
    Ok(OmegaCutDemo { q: q.clone(), gamma: gamma.clone(), left, table, endsequent, reduced })
}

/// Cut between `p(c) ⇒ Y(c) → Y(c)` and an Ω-inference concluding
/// `∀X(X(c) → X(c)), p(c) ⇒ p(c) ∨ r`, indexed by subsets of `{p(c), ⊥}`.
pub fn omega_cut_demo() -> Result<OmegaCutDemo> {
    let gamma: BTreeSet<Formula> = [parse("p(c)")].into();
    omega_cut_instance(
        &parse("All X. X(c) -> X(c)"),
        &gamma,
        &parse("p(c) | r"),
        &[parse("p(c)"), Formula::Bot],
        &SearchBudget::depth(8),
    )
}
