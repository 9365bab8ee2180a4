use std::collections::BTreeSet;

use super::{interpret, Assignment, Structure, Valuation};
use crate::error::Result;
use crate::omega::{omega_membership, OmegaVerdict};
use crate::search::SearchBudget;
use crate::syntax::Formula;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeEntry {
    pub delta: BTreeSet<Formula>,
    /// `V(Δ)`.
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    /// Pool members certified to lie in `|q|_0`, with their values.
    pub certified: Vec<ProbeEntry>,
    /// Pool members for which no certificate was found within the budget.
    pub not_found: Vec<BTreeSet<Formula>>,
    pub q_value: usize,
    /// The succedent value of the Ω-instance `q ⇒ ⊥`.
    pub target: usize,
    pub unsound_instance: bool,
}

/// Evaluates the Ω-instance `{Δ ⇒ ⊥}_Δ / q ⇒ ⊥` over a finite pool of
/// contexts. Set variables denote the constant `⊥` function and free term
/// variables the first universe term. The instance is flagged when at least
/// one premise is certified, all certified premises hold and the conclusion fails.
pub fn omega_soundness_probe(
    s: &Structure,
    q: &Formula,
    pool: &[BTreeSet<Formula>],
    budget: &SearchBudget,
) -> Result<ProbeReport> {
    let h = &s.algebra;
    let v = Valuation::constant(s, h.bot());
    let first = s.universe()[0].clone();
    let sigma_for = |fs: &mut dyn Iterator<Item = &Formula>| -> Assignment {
        fs.flat_map(|f| f.free_term_vars()).map(|x| (x, first.clone())).collect()
    };
    let target = h.bot();
    let q_value = interpret(q, s, &v, &sigma_for(&mut std::iter::once(q)))?;
    let mut certified = Vec::new();
    let mut not_found = Vec::new();
    for delta in pool {
        match omega_membership(q, delta, None, budget)? {
            OmegaVerdict::Member { .. } => {
                let sigma = sigma_for(&mut delta.iter());
                let mut value = h.top();
                for f in delta {
                    value = h.meet(value, interpret(f, s, &v, &sigma)?);
                }
                certified.push(ProbeEntry { delta: delta.clone(), value });
            }
            OmegaVerdict::NotFoundWithinBudget => not_found.push(delta.clone()),
        }
    }
    let unsound_instance =
        !certified.is_empty() && certified.iter().all(|e| h.leq(e.value, target)) && !h.leq(q_value, target);
    Ok(ProbeReport { certified, not_found, q_value, target, unsound_instance })
}
