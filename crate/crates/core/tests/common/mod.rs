//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use omegalab::kernel::build::{
    all2_l, all2_r, all_l, all_r, and_l, and_r, bot_l, cut, ex2_l, ex2_r, ex_l, ex_r, id, imp_l, imp_r, or_l, or_r,
};
use omegalab::kernel::{check, substitute_derivation, Binding, Calculus, Derivation};
use omegalab::lattice::catalogue::heyting_catalogue;
use omegalab::lattice::{HeytingAlgebra, HeytingFrame, Polarity};
use omegalab::semantics::Structure;
use omegalab::syntax::{Abstract, Conn, Formula, Language, Level, Term};
use rand::seq::SliceRandom;
use rand::Rng;
pub use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn term(rng: &mut ChaCha8Rng) -> Term {
    match rng.gen_range(0..3) {
        0 => Term::var("x"),
        1 => Term::var("y"),
        _ => Term::constant("a"),
    }
}

/// Atoms over `p`, `q`, `r(t)` and, with `sets`, `X(t)`.
pub fn atom(rng: &mut ChaCha8Rng, sets: bool) -> Formula {
    let k = if sets { 5 } else { 4 };
    match rng.gen_range(0..k) {
        0 => Formula::prop("p"),
        1 => Formula::prop("q"),
        2 => Formula::pred("r", vec![term(rng)]),
        3 if rng.gen_bool(0.15) => Formula::Bot,
        3 => Formula::pred("r", vec![term(rng)]),
        _ => Formula::set_atom("X", term(rng)),
    }
}

pub fn connective(rng: &mut ChaCha8Rng) -> Conn {
    *[Conn::And, Conn::Or, Conn::Imp].choose(rng).unwrap()
}

/// A first-order formula of the given depth, with `X` atoms when `sets`.
pub fn formula(rng: &mut ChaCha8Rng, depth: usize, sets: bool) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return atom(rng, sets);
    }
    match rng.gen_range(0..5) {
        0 => {
            let v = if rng.gen_bool(0.5) { "x" } else { "y" };
            let body = formula(rng, depth - 1, sets);
            if rng.gen_bool(0.5) {
                Formula::all(v, &body)
            } else {
                Formula::ex(v, &body)
            }
        }
        _ => {
            let c = connective(rng);
            Formula::bin(c, formula(rng, depth - 1, sets), formula(rng, depth - 1, sets))
        }
    }
}

/// Closes `X` under a second-order quantifier after removing free term
/// variables, so the result has level 0.
pub fn level0(rng: &mut ChaCha8Rng, depth: usize) -> Formula {
    let mut f = formula(rng, depth, true);
    for v in f.free_term_vars() {
        f = Formula::all(&v, &f);
    }
    if rng.gen_bool(0.5) {
        Formula::all2("X", &f)
    } else {
        Formula::ex2("X", &f)
    }
}

/// `λx. ψ` with `ψ` first-order.
pub fn first_order_abstract(rng: &mut ChaCha8Rng) -> Abstract {
    Abstract::new("x", &formula(rng, 2, false))
}

fn pick<'a>(rng: &mut ChaCha8Rng, pool: &'a [Derivation]) -> &'a Derivation {
    &pool[rng.gen_range(0..pool.len())]
}

fn pick_formula(rng: &mut ChaCha8Rng, set: &BTreeSet<Formula>) -> Option<Formula> {
    let v: Vec<&Formula> = set.iter().collect();
    v.choose(rng).map(|f| (*f).clone())
}

fn succedent(d: &Derivation) -> Option<Formula> {
    d.conclusion.suc.clone()
}

/// Forward generation of derivations: a pool grows by applying random
/// rules to earlier members, and every result is kept only if the checker
/// accepts it in `calc`.
pub struct ProofGen {
    pub rng: ChaCha8Rng,
    pub calc: Calculus,
    pub cuts: bool,
    pub max_size: usize,
    pub pool: Vec<Derivation>,
}

impl ProofGen {
    pub fn new(seed: u64, calc: Calculus, cuts: bool) -> ProofGen {
        ProofGen { rng: rng(seed), calc, cuts, max_size: 200, pool: Vec::new() }
    }

    fn sets(&self) -> bool {
        self.calc != Calculus::Li
    }

    fn leaf(&mut self) -> Derivation {
        let sets = self.sets();
        let ctx: Vec<Formula> = (0..self.rng.gen_range(0..2)).map(|_| atom(&mut self.rng, sets)).collect();
        if self.rng.gen_bool(0.1) {
            let suc = formula(&mut self.rng, 1, sets);
            return bot_l(ctx, Some(suc));
        }
        let phi = if self.sets() && self.rng.gen_bool(0.2) {
            level0(&mut self.rng, 1)
        } else {
            formula(&mut self.rng, 1, sets)
        };
        id(ctx, &phi)
    }

    fn step(&mut self) -> Option<Derivation> {
        if self.pool.len() < 4 || self.rng.gen_bool(0.15) {
            return Some(self.leaf());
        }
        let sets = self.sets();
        let d = pick(&mut self.rng, &self.pool).clone();
        let ant = d.conclusion.ant.clone();
        let suc = succedent(&d);
        let rule = self.rng.gen_range(0..17);
        match rule {
            0 => {
                let e = pick(&mut self.rng, &self.pool).clone();
                Some(and_r(d, e))
            }
            1 => {
                let other = formula(&mut self.rng, 1, sets);
                Some(or_r(d, self.rng.gen_range(1..=2), &other))
            }
            2 => {
                let h = if self.rng.gen_bool(0.8) { pick_formula(&mut self.rng, &ant)? } else { atom(&mut self.rng, sets) };
                Some(imp_r(d, &h))
            }
            3 => {
                let a = pick_formula(&mut self.rng, &ant)?;
                let b = formula(&mut self.rng, 1, sets);
                let (main, i) = if self.rng.gen_bool(0.5) { (Formula::and(a, b), 1) } else { (Formula::and(b, a), 2) };
                Some(and_l(d, &main, i))
            }
            4 => {
                let a = pick_formula(&mut self.rng, &ant)?;
                let partner = self
                    .pool
                    .iter()
                    .filter(|e| e.conclusion.suc == suc && !e.conclusion.ant.is_empty())
                    .cloned()
                    .collect::<Vec<_>>();
                let e = match partner.choose(&mut self.rng) {
                    Some(e) => e.clone(),
                    None => bot_l([], suc.clone()),
                };
                let b = pick_formula(&mut self.rng, &e.conclusion.ant)?;
                Some(or_l(d, e, &Formula::or(a, b)))
            }
            5 => {
                let a = suc?;
                let e = pick(&mut self.rng, &self.pool).clone();
                let b = pick_formula(&mut self.rng, &e.conclusion.ant)?;
                Some(imp_l(d, e, &Formula::imp(a, b)))
            }
            6 | 7 if self.cuts => {
                let a = suc?;
                let partners: Vec<Derivation> =
                    self.pool.iter().filter(|e| e.conclusion.ant.contains(&a)).cloned().collect();
                let e = partners.choose(&mut self.rng)?.clone();
                Some(cut(d, e))
            }
            8 => {
                let cands: Vec<(Derivation, Formula, String)> = self
                    .pool
                    .iter()
                    .flat_map(|e| e.conclusion.ant.iter().flat_map(move |a| a.free_term_vars().into_iter().map(move |v| (e.clone(), a.clone(), v))))
                    .collect();
                let (e, a, v) = cands.choose(&mut self.rng)?.clone();
                Some(all_l(e, &Formula::all(&v, &a), &Term::var(v)))
            }
            9 => {
                let cands: Vec<(Derivation, String)> = self.pool.iter().filter_map(|e| eigen_right(e).map(|v| (e.clone(), v))).collect();
                let (e, v) = cands.choose(&mut self.rng)?.clone();
                Some(all_r(e, &v))
            }
            10 => {
                let cands: Vec<(Derivation, Formula, String)> = self
                    .pool
                    .iter()
                    .filter_map(|e| e.conclusion.suc.clone().map(|s| (e, s)))
                    .flat_map(|(e, s)| s.free_term_vars().into_iter().map(move |v| (e.clone(), s.clone(), v)))
                    .collect();
                let (e, s, v) = cands.choose(&mut self.rng)?.clone();
                Some(ex_r(e, &Formula::ex(&v, &s), &Term::var(v)))
            }
            11 => {
                let cands: Vec<(Derivation, Formula, String)> =
                    self.pool.iter().flat_map(|e| eigen_left(e).into_iter().map(move |(a, v)| (e.clone(), a, v))).collect();
                let (e, a, v) = cands.choose(&mut self.rng)?.clone();
                Some(ex_l(e, &Formula::ex(&v, &a), &v))
            }
            12 if sets => {
                let cands: Vec<Derivation> = self
                    .pool
                    .iter()
                    .filter(|e| {
                        e.conclusion.suc.as_ref().is_some_and(|s| s.has_free_set_var("X"))
                            && !e.conclusion.ant.iter().any(|f| f.has_free_set_var("X"))
                    })
                    .cloned()
                    .collect();
                Some(all2_r(cands.choose(&mut self.rng)?.clone(), "X"))
            }
            13 if sets => {
                let cands: Vec<(Derivation, Formula)> = self
                    .pool
                    .iter()
                    .flat_map(|e| e.conclusion.ant.iter().filter(|f| f.has_free_set_var("X")).map(move |a| (e.clone(), a.clone())))
                    .collect();
                let (e, a) = cands.choose(&mut self.rng)?.clone();
                let tau = first_order_abstract(&mut self.rng);
                let e = substitute_derivation(&e, &Binding::Set("X".into(), tau.clone()), self.calc).ok()?;
                Some(all2_l(e, &Formula::all2("X", &a), &tau))
            }
            14 if sets => {
                let cands: Vec<(Derivation, Formula)> = self
                    .pool
                    .iter()
                    .filter_map(|e| e.conclusion.suc.clone().filter(|s| s.has_free_set_var("X")).map(|s| (e.clone(), s)))
                    .collect();
                let (e, s) = cands.choose(&mut self.rng)?.clone();
                Some(ex2_r(e, &Formula::ex2("X", &s), &Abstract::set_var("X")))
            }
            15 if sets => {
                let cands: Vec<(Derivation, Formula)> = self
                    .pool
                    .iter()
                    .flat_map(|e| {
                        let c = &e.conclusion;
                        let own: Vec<&Formula> = c.ant.iter().filter(|f| f.has_free_set_var("X")).collect();
                        let alone = own.len() == 1 && !c.suc.as_ref().is_some_and(|s| s.has_free_set_var("X"));
                        own.into_iter().filter(move |_| alone).map(move |a| (e.clone(), a.clone()))
                    })
                    .collect();
                let (e, a) = cands.choose(&mut self.rng)?.clone();
                Some(ex2_l(e, &Formula::ex2("X", &a), "X"))
            }
            _ => Some(self.leaf()),
        }
    }

    /// Runs until the pool holds `n` checked derivations.
    pub fn fill(&mut self, n: usize) {
        let mut attempts = 0;
        while self.pool.len() < n && attempts < 200 * n {
            attempts += 1;
            let Some(d) = self.step() else { continue };
            if d.size() > self.max_size || !check(&d, self.calc).is_empty() {
                continue;
            }
            self.pool.push(d);
        }
    }
}

/// A variable of the succedent that is free nowhere in the antecedent.
fn eigen_right(d: &Derivation) -> Option<String> {
    let s = d.conclusion.suc.as_ref()?;
    s.free_term_vars().into_iter().find(|v| !d.conclusion.ant.iter().any(|f| f.has_free_term_var(v)))
}

/// Antecedent members with a variable free nowhere else in the sequent.
fn eigen_left(d: &Derivation) -> Vec<(Formula, String)> {
    let c = &d.conclusion;
    let mut out = Vec::new();
    for a in &c.ant {
        for v in a.free_term_vars() {
            let elsewhere = c.ant.iter().any(|f| f != a && f.has_free_term_var(&v))
                || c.suc.as_ref().is_some_and(|s| s.has_free_term_var(&v));
            if !elsewhere {
                out.push((a.clone(), v));
            }
        }
    }
    out
}

fn pick_formula_var(rng: &mut ChaCha8Rng, f: &Formula) -> Option<String> {
    let vs: Vec<String> = f.free_term_vars().into_iter().collect();
    vs.choose(rng).cloned()
}

/// A full structure over a random algebra with at most five elements and
/// the constants `a`, `b`, `c` (at least `a`), with random predicate tables.
pub fn structure(rng: &mut ChaCha8Rng, catalogue: &[HeytingAlgebra]) -> Structure {
    let h = catalogue.choose(rng).unwrap().clone();
    let k = rng.gen_range(1..=3);
    let mut lang = Language::new();
    for c in ["a", "b", "c"].iter().take(k) {
        lang = lang.with_function(c, 0);
    }
    let mut s = Structure::full(h, &lang, 0).unwrap();
    let n = s.algebra.len();
    let universe = s.universe().to_vec();
    for p in ["p", "q"] {
        let v = rng.gen_range(0..n);
        s.set_predicate(p, &[], v).unwrap();
    }
    for t in universe {
        let v = rng.gen_range(0..n);
        s.set_predicate("r", &[t], v).unwrap();
    }
    s
}

pub fn small_algebras() -> Vec<HeytingAlgebra> {
    heyting_catalogue(5)
}

/// A valid Heyting frame with `|W| ≤ 4` and `|W′| ≤ 5`: either a subframe of
/// a small Heyting algebra or a frame with a one-element monoid.
pub fn frame(rng: &mut ChaCha8Rng, catalogue: &[HeytingAlgebra]) -> HeytingFrame {
    loop {
        if rng.gen_bool(0.3) {
            let w2 = rng.gen_range(1..=5);
            let pairs: Vec<(usize, usize)> = (0..w2).filter(|_| rng.gen_bool(0.5)).map(|z| (0, z)).collect();
            let p = Polarity::from_pairs(1, w2, &pairs).unwrap();
            let res = vec![(0..w2).collect()];
            return HeytingFrame::new(p, vec![vec![0]], 0, res).unwrap();
        }
        let a = catalogue.choose(rng).unwrap();
        let n = a.len();
        // W: ⊤ plus random elements, closed under meets
        let mut w: BTreeSet<usize> = [a.top()].into();
        for e in 0..n {
            if rng.gen_bool(0.4) {
                w.insert(e);
            }
        }
        loop {
            let extra: Vec<usize> =
                w.iter().flat_map(|&x| w.iter().map(move |&y| (x, y))).map(|(x, y)| a.meet(x, y)).collect();
            let before = w.len();
            w.extend(extra);
            if w.len() == before {
                break;
            }
        }
        // W′: random seeds closed under x → · for x ∈ W
        let mut w2: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        w2.insert(a.bot());
        loop {
            let extra: Vec<usize> = w.iter().flat_map(|&x| w2.iter().map(move |&z| (x, z))).map(|(x, z)| a.imp(x, z)).collect();
            let before = w2.len();
            w2.extend(extra);
            if w2.len() == before {
                break;
            }
        }
        if w.len() > 4 || w2.len() > 5 {
            continue;
        }
        let w: Vec<usize> = w.into_iter().collect();
        let w2: Vec<usize> = w2.into_iter().collect();
        return HeytingFrame::sub_algebra(a, &w, &w2).unwrap();
    }
}

/// Formulas with their level and cut rank, worked out by hand.
pub const LEVEL_TABLE: &[(&str, Level, usize)] = &[
        ("p", Level::At(-1), 0),
        ("bot", Level::At(-1), 0),
        ("p & q", Level::At(-1), 1),
        ("p -> q | r", Level::At(-1), 2),
        ("all x. r(x)", Level::At(-1), 1),
        ("ex x. r(x) & p", Level::At(-1), 2),
        ("X(x)", Level::At(-1), 0),
        ("X(x) -> Y(x)", Level::At(-1), 1),
        ("All X. X(c)", Level::At(0), 0),
        ("All X. X(c) -> X(d)", Level::At(0), 0),
        ("(All X. X(c)) -> p", Level::At(0), 1),
        ("All X. all x. X(x) -> X(s(x))", Level::At(0), 0),
        ("All X. (All Y. Y(c)) -> X(c)", Level::At(1), 0),
        ("Ex X. X(c) & (All Y. Y(c) -> X(c))", Level::NotParameterFree, 0),
        ("All X. X(c) -> Y(c)", Level::NotParameterFree, 0),
        ("all x. All X. X(x)", Level::At(0), 1),
        ("All X. (All Y. (All Z. Z(c)) -> Y(c)) -> X(c)", Level::At(2), 0),
        ("((All X. X(c)) -> bot) & ex x. r(x)", Level::At(0), 2),
        ("p | (All X. (All Y. Y(c)) -> X(c))", Level::At(1), 1),
        ("X(c) & All Y. Y(c) | p", Level::At(0), 1),
    ];

/// A closed second-order sentence of level at most `n`, built over the
/// fresh set variable `Z{n}`; `leak` lets `X` occur inside the body.
pub fn sentence(rng: &mut ChaCha8Rng, n: i32, leak: bool) -> Formula {
    let z = format!("Z{n}");
    let own = Formula::set_atom(z.clone(), Term::constant("c"));
    let mut body = own.clone();
    for _ in 0..rng.gen_range(0..3) {
        let other = if n > 0 && rng.gen_bool(0.4) {
            sentence(rng, n - 1, leak)
        } else if leak && rng.gen_bool(0.2) {
            Formula::set_atom("X", Term::constant("c"))
        } else {
            atom(rng, false)
        };
        body = Formula::bin(connective(rng), body, other);
    }
    Formula::all2(&z, &body)
}

/// Propositional combination of atoms, `X` atoms and sentences up to level `n`.
pub fn mixed(rng: &mut ChaCha8Rng, n: i32, depth: usize, with_x: bool) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..3) {
            0 if n >= 0 => {
                let leak = rng.gen_bool(0.1);
                sentence(rng, n, leak)
            }
            1 if with_x => Formula::set_atom("X", Term::var("x")),
            _ => atom(rng, false),
        };
    }
    Formula::bin(connective(rng), mixed(rng, n, depth - 1, with_x), mixed(rng, n, depth - 1, with_x))
}


/// Draws `(φ, τ)` pairs at levels `n ∈ {0, 1, 2}` until `count` of them meet
/// `φ, τ ∈ FMP_n`, and checks `φ(τ) ∈ FMP_n` for each. Returns the count per level.
pub fn substitution_checks(seed: u64, count: usize) -> Result<[usize; 3], String> {
    let mut rng = rng(seed);
    let mut checked = [0usize; 3];
    let mut attempts = 0;
    while checked.iter().sum::<usize>() < count {
        attempts += 1;
        if attempts > 40 * count {
            return Err(format!("only {checked:?} pairs after {attempts} draws"));
        }
        let n = rng.gen_range(0..3);
        let (m, k) = (rng.gen_range(-1..=n + 1), rng.gen_range(-1..=n + 1));
        let phi = mixed(&mut rng, m, 3, true);
        let tau = Abstract::new("x", &mixed(&mut rng, k, 2, false));
        if !phi.level().within(n) || !tau.level().within(n) {
            continue;
        }
        let out = phi.subst_set("X", &tau);
        if !out.level().within(n) || !Calculus::Lip(n as u32).admits(&out) {
            return Err(format!("{phi} with {tau} at {n} has level {}", out.level()));
        }
        checked[n as usize] += 1;
    }
    Ok(checked)
}
