//! Craig interpolation on cut-free LI derivations by Maehara's method.
//!
//! A split `A | B ⇒ Π` of a sequent is interpolated by `I` when `A ⇒ I` and
//! `I, B ⇒ Π` are provable and `I` only uses predicates, set variables and
//! free term variables common to `A` and `B, Π`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::kernel::{check, Calculus, Derivation, Rule, Sequent};
use crate::search::{search_cutfree, SearchBudget};
use crate::syntax::{Conn, Formula};

/// Interpolant of `d` for the split of its antecedent into `left` and `right`.
pub fn interpolate(d: &Derivation, left: &BTreeSet<Formula>, right: &BTreeSet<Formula>) -> Result<Formula> {
    let ant = &d.conclusion.ant;
    if !left.is_disjoint(right) {
        return Err(Error::InvalidPartition("the two parts overlap".into()));
    }
    let union: BTreeSet<Formula> = left.union(right).cloned().collect();
    if &union != ant {
        return Err(Error::InvalidPartition("the parts do not cover the antecedent".into()));
    }
    if let Some(v) = check(d, Calculus::Li).first() {
        return Err(Error::InvalidDerivation(v.to_string()));
    }
    if !d.is_cut_free() {
        return Err(Error::NotCutFree);
    }
    if left.is_empty() {
        return Ok(Formula::top());
    }
    Ok(simplify(&interp(d, left, right)))
}

fn restrict(set: &BTreeSet<Formula>, prem: &Sequent) -> BTreeSet<Formula> {
    set.intersection(&prem.ant).cloned().collect()
}

/// Premise split: inherited formulas keep their side, new formulas join `right` or `left`.
fn split(
    prem: &Sequent,
    a: &BTreeSet<Formula>,
    b: &BTreeSet<Formula>,
    to_right: bool,
) -> (BTreeSet<Formula>, BTreeSet<Formula>) {
    let (mut a2, mut b2) = (restrict(a, prem), restrict(b, prem));
    for f in &prem.ant {
        if !a.contains(f) && !b.contains(f) {
            if to_right { b2.insert(f.clone()) } else { a2.insert(f.clone()) };
        }
    }
    (a2, b2)
}

fn interp(d: &Derivation, a: &BTreeSet<Formula>, b: &BTreeSet<Formula>) -> Formula {
    let c = &d.conclusion;
    let ps = &d.premises;
    let main_right = d.rule.left_main().map(|m| b.contains(m));
    let i = match &d.rule {
        Rule::Id => {
            let phi = c.suc.as_ref().expect("identity succedent");
            if b.contains(phi) { Formula::top() } else { phi.clone() }
        }
        Rule::BotL => {
            if b.contains(&Formula::Bot) { Formula::top() } else { Formula::Bot }
        }
        Rule::BotR | Rule::OrR(_) | Rule::AllR(_) | Rule::ExR(_) => {
            let (a2, b2) = split(&ps[0].conclusion, a, b, true);
            interp(&ps[0], &a2, &b2)
        }
        Rule::ImpR => {
            let (a2, b2) = split(&ps[0].conclusion, a, b, true);
            interp(&ps[0], &a2, &b2)
        }
        Rule::AndR => {
            let i1 = interp(&ps[0], &restrict(a, &ps[0].conclusion), &restrict(b, &ps[0].conclusion));
            let i2 = interp(&ps[1], &restrict(a, &ps[1].conclusion), &restrict(b, &ps[1].conclusion));
            Formula::and(i1, i2)
        }
        Rule::AndL { .. } | Rule::AllL { .. } | Rule::ExL { .. } => {
            let right = main_right.unwrap();
            let (a2, b2) = split(&ps[0].conclusion, a, b, right);
            interp(&ps[0], &a2, &b2)
        }
        Rule::OrL { .. } => {
            let right = main_right.unwrap();
            let (a1, b1) = split(&ps[0].conclusion, a, b, right);
            let (a2, b2) = split(&ps[1].conclusion, a, b, right);
            let (i1, i2) = (interp(&ps[0], &a1, &b1), interp(&ps[1], &a2, &b2));
            if right { Formula::and(i1, i2) } else { Formula::or(i1, i2) }
        }
        Rule::ImpL { .. } => {
            let right = main_right.unwrap();
            let (a1, b1) = split(&ps[0].conclusion, a, b, right);
            let (a2, b2) = split(&ps[1].conclusion, a, b, right);
            let k = interp(&ps[1], &a2, &b2);
            if right {
                Formula::and(interp(&ps[0], &a1, &b1), k)
            } else {
                // the succedent of the first premise belongs to the left part
                Formula::imp(interp(&ps[0], &b1, &a1), k)
            }
        }
        Rule::Cut(_) | Rule::All2L { .. } | Rule::All2R(_) | Rule::Ex2L { .. } | Rule::Ex2R(_) => {
            unreachable!("rejected before interpolation")
        }
    };
    close(i, a, b, c.suc.as_ref())
}

fn free_vars<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<String> {
    fs.into_iter().flat_map(|f| f.free_term_vars()).collect()
}

/// Binds the free variables of `i` that are private to one side.
fn close(i: Formula, a: &BTreeSet<Formula>, b: &BTreeSet<Formula>, suc: Option<&Formula>) -> Formula {
    let fa = free_vars(a);
    let fb = free_vars(b.iter().chain(suc));
    let fi = i.free_term_vars();
    let mut i = i;
    for z in fi.iter().filter(|z| !fb.contains(*z)) {
        i = Formula::ex(z, &i);
    }
    for z in fi.iter().filter(|z| fb.contains(*z) && !fa.contains(*z)) {
        i = Formula::all(z, &i);
    }
    i
}

/// Removes `⊤`/`⊥` units and vacuous quantifiers; the result is equivalent in LI.
pub fn simplify(f: &Formula) -> Formula {
    let bot = Formula::Bot;
    match f {
        _ if f.is_top() => Formula::top(),
        Formula::Bin(k, l, r) => {
            let (l, r) = (simplify(l), simplify(r));
            match k {
                Conn::And if l.is_top() => r,
                Conn::And if r.is_top() => l,
                Conn::And if l == bot || r == bot => bot,
                Conn::Or if l == bot => r,
                Conn::Or if r == bot => l,
                Conn::Or if l.is_top() || r.is_top() => Formula::top(),
                Conn::Imp if l.is_top() => r,
                Conn::Imp if r.is_top() || l == bot || l == r => Formula::top(),
                _ if l == r && *k != Conn::Imp => l,
                _ => Formula::bin(*k, l, r),
            }
        }
        Formula::Quant(q, body) => {
            let inner = simplify(body);
            if inner.max_loose_term(0).is_none() {
                return inner;
            }
            Formula::Quant(*q, Box::new(inner))
        }
        Formula::SetQuant(q, body) => Formula::SetQuant(*q, Box::new(simplify(body))),
        _ => f.clone(),
    }
}

/// Predicate symbols, set variables and free term variables of the given formulas.
pub fn vocabulary<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for f in fs {
        out.extend(f.predicates().into_iter().map(|(p, n)| format!("pred {p}/{n}")));
        out.extend(f.free_set_vars().into_iter().map(|x| format!("set {x}")));
        out.extend(f.free_term_vars().into_iter().map(|x| format!("var {x}")));
    }
    out
}

/// Certificates for the two halves of an interpolation problem.
#[derive(Clone, Debug)]
pub struct InterpolantCertificate {
    pub left: Derivation,
    pub right: Derivation,
}

/// Re-establishes the three interpolant conditions by search and checking.
pub fn certify_interpolant(
    i: &Formula,
    left: &BTreeSet<Formula>,
    right: &BTreeSet<Formula>,
    suc: Option<&Formula>,
    budget: &SearchBudget,
) -> Result<InterpolantCertificate> {
    let shared: BTreeSet<String> =
        vocabulary(left).intersection(&vocabulary(right.iter().chain(suc))).cloned().collect();
    if let Some(sym) = vocabulary([i]).difference(&shared).next() {
        return Err(Error::InvalidCertificate(format!("{sym} is not shared")));
    }
    let prove = |s: Sequent| -> Result<Derivation> {
        let d = search_cutfree(&s, budget)?
            .derivation()
            .ok_or_else(|| Error::InvalidCertificate(format!("no proof of {s} within budget")))?;
        match check(&d, Calculus::Li).first() {
            Some(v) => Err(Error::InvalidCertificate(v.to_string())),
            None => Ok(d),
        }
    };
    let l = prove(Sequent { ant: left.clone(), suc: Some(i.clone()) })?;
    let mut ant = right.clone();
    ant.insert(i.clone());
    let r = prove(Sequent { ant, suc: suc.cloned() })?;
    Ok(InterpolantCertificate { left: l, right: r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::build;
    use crate::syntax::formula;

    fn f(s: &str) -> Formula {
        formula(s).unwrap()
    }

    fn set(fs: &[&str]) -> BTreeSet<Formula> {
        fs.iter().map(|s| f(s)).collect()
    }

    fn proof(ant: &[&str], suc: &str) -> Derivation {
        let s = Sequent::new(ant.iter().map(|x| f(x)), Some(f(suc)));
        search_cutfree(&s, &SearchBudget::depth(10)).unwrap().derivation().unwrap()
    }

    #[test]
    fn conjunction_to_disjunction() {
        let d = proof(&["p & q"], "q | r");
        let i = interpolate(&d, &set(&["p & q"]), &set(&[])).unwrap();
        assert_eq!(i, f("q"));
        certify_interpolant(&i, &set(&["p & q"]), &set(&[]), Some(&f("q | r")), &SearchBudget::depth(8)).unwrap();
    }

    #[test]
    fn disjoint_vocabularies_give_falsum() {
        let d = proof(&["q -> bot", "q"], "Y(c) -> Y(x)");
        let a = set(&["q -> bot", "q"]);
        let i = interpolate(&d, &a, &set(&[])).unwrap();
        assert_eq!(i, Formula::Bot);
        certify_interpolant(&i, &a, &set(&[]), Some(&f("Y(c) -> Y(x)")), &SearchBudget::depth(8)).unwrap();
    }

    #[test]
    fn empty_left_part_gives_top() {
        let d = proof(&["p"], "p");
        assert!(interpolate(&d, &set(&[]), &set(&["p"])).unwrap().is_top());
    }

    #[test]
    fn implication_in_left_part() {
        let a = set(&["p -> q", "p"]);
        let b = set(&["q -> r"]);
        let d = proof(&["p -> q", "p", "q -> r"], "r");
        let i = interpolate(&d, &a, &b).unwrap();
        certify_interpolant(&i, &a, &b, Some(&f("r")), &SearchBudget::depth(8)).unwrap();
        assert_eq!(i, f("q"));
    }

    #[test]
    fn quantified_variables_are_bound() {
        let a = set(&["all x. p(x) & q(x)"]);
        let d = proof(&["all x. p(x) & q(x)"], "q(c) | r");
        let i = interpolate(&d, &a, &set(&[])).unwrap();
        assert_eq!(i, f("all z. q(z)"));
        certify_interpolant(&i, &a, &set(&[]), Some(&f("q(c) | r")), &SearchBudget::depth(10)).unwrap();
    }

    #[test]
    fn rejects_bad_inputs() {
        let d = proof(&["p", "q"], "p");
        assert!(matches!(interpolate(&d, &set(&["p"]), &set(&[])), Err(Error::InvalidPartition(_))));
        assert!(matches!(interpolate(&d, &set(&["p", "q"]), &set(&["q"])), Err(Error::InvalidPartition(_))));
        let c = build::cut(build::axiom(&f("p")), build::axiom(&f("p")));
        assert_eq!(interpolate(&c, &set(&["p"]), &set(&[])), Err(Error::NotCutFree));
    }
}
