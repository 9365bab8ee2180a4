//! Index sets of the Ω-rule at k = 0 and the finite Ω-cut reduction.
//!
//! `Δ ∈ |∀X.φ|_0` iff `Δ ⇒ φ(Y)` has a cut-free LI proof for fresh `Y`, and
//! `Δ ∈ |∃X.φ|_0` (relative to a succedent `Λ`) iff `φ(Y), Δ ⇒ Λ` does.
//! Membership is only ever certified; a failed search is reported as such.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::kernel::{check, Calculus, Derivation, Fresh, Sequent};
use crate::search::{search_cutfree, SearchBudget, SearchOutcome};
use crate::syntax::{Abstract, Formula, Level, Quant};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OmegaVerdict {
    Member { derivation: Derivation, y: String },
    NotFoundWithinBudget,
}

impl OmegaVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, OmegaVerdict::Member { .. })
    }
}

fn check_quantifier(q: &Formula) -> Result<Quant> {
    let Formula::SetQuant(k, _) = q else {
        return Err(Error::Precondition(format!("{q} is not second-order quantified")));
    };
    if !q.free_set_vars().is_empty() {
        return Err(Error::Precondition(format!("{q} has free set variables")));
    }
    if q.level() != Level::At(0) {
        return Err(Error::LevelViolation(format!("{q} does not have level 0")));
    }
    Ok(*k)
}

fn check_first_order<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> Result<()> {
    match fs.into_iter().find(|f| f.level() != Level::FIRST_ORDER) {
        Some(f) => Err(Error::LevelViolation(format!("{f} is not first-order"))),
        None => Ok(()),
    }
}

/// The defining sequent of the index set for `q` at `Δ`, with `Y` the chosen set variable.
pub fn defining_sequent(q: &Formula, delta: &BTreeSet<Formula>, lambda: Option<&Formula>, y: &str) -> Result<Sequent> {
    let k = check_quantifier(q)?;
    let inst = q.instantiate_set(&Abstract::set_var(y)).expect("set quantifier");
    Ok(match k {
        Quant::All => Sequent { ant: delta.clone(), suc: Some(inst) },
        Quant::Ex => {
            let mut ant = delta.clone();
            ant.insert(inst);
            Sequent { ant, suc: lambda.cloned() }
        }
    })
}

fn fresh_set_var(delta: &BTreeSet<Formula>, lambda: Option<&Formula>) -> String {
    let mut used = BTreeSet::new();
    for f in delta.iter().chain(lambda) {
        used.extend(f.free_set_vars());
    }
    Fresh::new(used).next("Y")
}

/// Decides `Δ ∈ |q|_0` within the budget. `lambda` is the succedent for an
/// existential `q` and is ignored for a universal one.
pub fn omega_membership(
    q: &Formula,
    delta: &BTreeSet<Formula>,
    lambda: Option<&Formula>,
    budget: &SearchBudget,
) -> Result<OmegaVerdict> {
    let k = check_quantifier(q)?;
    let lambda = if k == Quant::Ex { lambda } else { None };
    check_first_order(delta.iter().chain(lambda))?;
    let y = fresh_set_var(delta, lambda);
    let goal = defining_sequent(q, delta, lambda, &y)?;
    Ok(match search_cutfree(&goal, budget)? {
        SearchOutcome::Found(derivation) => OmegaVerdict::Member { derivation, y },
        SearchOutcome::NotFoundWithinBudget { .. } => OmegaVerdict::NotFoundWithinBudget,
    })
}

/// Validates `left` as a certificate of `Γ ∈ |∀X.φ|_0` and returns the set variable it uses.
pub fn certify(q: &Formula, gamma: &BTreeSet<Formula>, left: &Derivation) -> Result<OmegaVerdict> {
    if check_quantifier(q)? != Quant::All {
        return Err(Error::Precondition(format!("{q} is not universally quantified")));
    }
    let bad = |why: String| Err(Error::InvalidCertificate(why));
    if let Some(v) = check(left, Calculus::Li).first() {
        return bad(v.to_string());
    }
    if !left.is_cut_free() {
        return bad("certificate contains cuts".into());
    }
    if &left.conclusion.ant != gamma {
        return bad(format!("certificate antecedent differs from {}", Sequent::new(gamma.iter().cloned(), None)));
    }
    let Some(suc) = &left.conclusion.suc else {
        return bad("certificate has an empty succedent".into());
    };
    let fv_gamma: BTreeSet<String> = gamma.iter().flat_map(|f| f.free_set_vars()).collect();
    let mut candidates = suc.free_set_vars();
    candidates.insert(fresh_set_var(gamma, None));
    for y in candidates {
        if fv_gamma.contains(&y) {
            continue;
        }
        if q.instantiate_set(&Abstract::set_var(&y)).as_ref() == Some(suc) {
            return Ok(OmegaVerdict::Member { derivation: left.clone(), y });
        }
    }
    bad(format!("{suc} is not an instance of {q} at a set variable fresh for the context"))
}

/// The finite Ω-cut reduction: a cut between `Γ ⇒ φ(Y)` and the Ω-premises
/// `{Δ, Γ ⇒ Π}` indexed by the table reduces to the premise at `Δ = Γ`.
pub fn omega_cut_reduce(
    gamma: &BTreeSet<Formula>,
    q: &Formula,
    left: &Derivation,
    premise_table: &BTreeMap<BTreeSet<Formula>, Derivation>,
) -> Result<Derivation> {
    certify(q, gamma, left)?;
    let Some(d) = premise_table.get(gamma) else {
        let names: Vec<String> = gamma.iter().map(|f| f.to_string()).collect();
        return Err(Error::MissingPremise(names.join(", ")));
    };
    if let Some(v) = check(d, Calculus::Lit).first() {
        return Err(Error::InvalidDerivation(v.to_string()));
    }
    if &d.conclusion.ant != gamma {
        return Err(Error::InvalidDerivation(format!("premise for Γ concludes {}", d.conclusion)));
    }
    Ok(d.clone())
}

/// All subsets of a formula pool of size at most four, smallest first.
pub fn pool_subsets(pool: &[Formula]) -> Result<Vec<BTreeSet<Formula>>> {
    if pool.len() > 4 {
        return Err(Error::Precondition(format!("formula pool has {} > 4 members", pool.len())));
    }
    let mut out: Vec<BTreeSet<Formula>> = (0u32..1 << pool.len())
        .map(|m| pool.iter().enumerate().filter(|(i, _)| m & (1 << i) != 0).map(|(_, f)| f.clone()).collect())
        .collect();
    out.sort_by_key(|s| s.len());
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{build, Rule};
    use crate::syntax::formula;

    fn f(s: &str) -> Formula {
        formula(s).unwrap()
    }

    fn set(fs: &[&str]) -> BTreeSet<Formula> {
        fs.iter().map(|s| f(s)).collect()
    }

    fn budget() -> SearchBudget {
        SearchBudget::depth(8)
    }

    #[test]
    fn reflexive_instance_is_member_of_empty_context() {
        let v = omega_membership(&f("All X. X(c) -> X(c)"), &set(&[]), None, &budget()).unwrap();
        let OmegaVerdict::Member { derivation, y } = v else { panic!("expected member") };
        assert_eq!(y, "Y0");
        assert!(check(&derivation, Calculus::Li).is_empty());
        assert_eq!(derivation.conclusion.suc, Some(f("Y0(c) -> Y0(c)")));
    }

    #[test]
    fn falsum_context_is_member() {
        let q = f("All X. X(c) -> X(x)");
        assert!(omega_membership(&q, &set(&["bot"]), None, &budget()).unwrap().is_member());
        let v = omega_membership(&q, &set(&[]), None, &budget()).unwrap();
        assert_eq!(v, OmegaVerdict::NotFoundWithinBudget);
    }

    #[test]
    fn fresh_variable_avoids_context() {
        let q = f("All X. X(c) -> X(c)");
        let v = omega_membership(&q, &set(&["Y0(c)"]), None, &budget()).unwrap();
        let OmegaVerdict::Member { y, .. } = v else { panic!() };
        assert_eq!(y, "Y1");
    }

    #[test]
    fn existential_side_uses_succedent() {
        let q = f("Ex X. X(c) & p");
        let v = omega_membership(&q, &set(&[]), Some(&f("p")), &budget()).unwrap();
        let OmegaVerdict::Member { derivation, .. } = v else { panic!() };
        assert_eq!(derivation.conclusion.suc, Some(f("p")));
        assert!(!omega_membership(&q, &set(&[]), Some(&f("r")), &budget()).unwrap().is_member());
    }

    #[test]
    fn level_preconditions() {
        let high = f("All X. (All Z. Z(c)) -> X(c)");
        assert!(matches!(omega_membership(&high, &set(&[]), None, &budget()), Err(Error::LevelViolation(_))));
        let q = f("All X. X(c)");
        assert!(matches!(omega_membership(&q, &set(&["All Z. Z(c)"]), None, &budget()), Err(Error::LevelViolation(_))));
    }

    #[test]
    fn cut_reduction_returns_stored_premise() {
        let q = f("All X. X(c) -> X(x)");
        let gamma = set(&["bot"]);
        let left = build::bot_l(gamma.iter().cloned(), Some(f("Y(c) -> Y(x)")));
        let pi = build::bot_l(gamma.iter().cloned(), Some(f("r")));
        let table: BTreeMap<_, _> = [(gamma.clone(), pi.clone())].into();
        assert_eq!(omega_cut_reduce(&gamma, &q, &left, &table).unwrap(), pi);
        let empty = BTreeMap::new();
        assert!(matches!(omega_cut_reduce(&gamma, &q, &left, &empty), Err(Error::MissingPremise(_))));
    }

    #[test]
    fn cut_reduction_rejects_bad_certificates() {
        let q = f("All X. X(c) -> X(c)");
        let gamma = set(&[]);
        let table: BTreeMap<_, _> = [(gamma.clone(), build::imp_r(build::axiom(&f("p")), &f("p")))].into();
        let wrong = build::all_r(build::axiom(&f("p(y)")), "y");
        assert!(matches!(omega_cut_reduce(&gamma, &q, &wrong, &table), Err(Error::InvalidCertificate(_))));
        let left = build::imp_r(build::axiom(&f("Y(c)")), &f("Y(c)"));
        assert_eq!(left.rule, Rule::ImpR);
        assert!(omega_cut_reduce(&gamma, &q, &left, &table).is_ok());
        let captured = set(&["Y(d)"]);
        let left = build::widen(&left, &captured);
        let table: BTreeMap<_, _> = [(captured.clone(), build::id([], &f("Y(d)")))].into();
        assert!(matches!(omega_cut_reduce(&captured, &q, &left, &table), Err(Error::InvalidCertificate(_))));
    }

    #[test]
    fn pool_subsets_are_bounded() {
        let pool = vec![f("p"), f("q"), f("r")];
        let subs = pool_subsets(&pool).unwrap();
        assert_eq!(subs.len(), 8);
        assert!(subs[0].is_empty());
        assert!(pool_subsets(&[f("a"), f("b"), f("c"), f("d"), f("e")]).is_err());
    }
}
