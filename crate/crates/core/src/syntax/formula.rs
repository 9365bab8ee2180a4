use std::collections::BTreeSet;
use std::fmt;

use super::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Conn {
    And,
    Or,
    Imp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quant {
    All,
    Ex,
}

/// Head of a set-variable atom `X(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SetRef {
    Free(String),
    Bound(usize),
}

/// Second-order intuitionistic formula in locally nameless form.
///
/// Term binders and set binders keep separate de Bruijn counters, so two
/// alpha-equivalent formulas are the same value: derived `Eq`, `Hash` and
/// `Ord` are alpha-equivalence and its canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Pred(String, Vec<Term>),
    SetAtom(SetRef, Term),
    Bot,
    Bin(Conn, Box<Formula>, Box<Formula>),
    /// First-order quantifier; the body sees the bound variable as index 0.
    Quant(Quant, Box<Formula>),
    /// Second-order quantifier; the body sees the bound set as set index 0.
    SetQuant(Quant, Box<Formula>),
}

/// The least `n` with `φ ∈ FMP_n`, or the marker for formulas that quantify
/// over a set while mentioning another set parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    At(i32),
    NotParameterFree,
}

impl Level {
    pub const FIRST_ORDER: Level = Level::At(-1);

    /// Membership in `FMP_n`.
    pub fn within(self, n: i32) -> bool {
        matches!(self, Level::At(l) if l <= n)
    }

    pub fn value(self) -> Option<i32> {
        match self {
            Level::At(l) => Some(l),
            Level::NotParameterFree => None,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::At(l) => write!(f, "{l}"),
            Level::NotParameterFree => f.write_str("not-parameter-free"),
        }
    }
}

/// `λx.φ`: the body refers to the lambda variable as term index 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Abstract {
    body: Formula,
}

impl Abstract {
    /// `λx.φ`, abstracting the free variable `x` of `φ`.
    pub fn new(x: &str, body: &Formula) -> Abstract {
        Abstract { body: body.close_term_at(0, x) }
    }

    /// Builds an abstract from a body that already uses index 0 for the
    /// lambda variable.
    pub fn from_open_body(body: Formula) -> Abstract {
        Abstract { body }
    }

    /// `λx.Y(x)`.
    pub fn set_var(name: &str) -> Abstract {
        Abstract { body: Formula::SetAtom(SetRef::Free(name.into()), Term::Bound(0)) }
    }

    pub fn open_body(&self) -> &Formula {
        &self.body
    }

    /// `τ(t)`.
    pub fn apply(&self, t: &Term) -> Formula {
        self.body.open_term_at(0, t, 0)
    }

    pub fn level(&self) -> Level {
        self.body.level()
    }

    pub fn free_set_vars(&self) -> BTreeSet<String> {
        self.body.free_set_vars()
    }

    pub fn free_term_vars(&self) -> BTreeSet<String> {
        self.body.free_term_vars()
    }

    pub fn subst_term(&self, x: &str, t: &Term) -> Abstract {
        Abstract { body: self.body.subst_term(x, t) }
    }

    pub fn subst_set(&self, x: &str, tau: &Abstract) -> Abstract {
        Abstract { body: self.body.subst_set(x, tau) }
    }
}

impl Formula {
    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Pred(name.into(), args)
    }

    pub fn prop(name: impl Into<String>) -> Formula {
        Formula::Pred(name.into(), Vec::new())
    }

    pub fn eq(l: Term, r: Term) -> Formula {
        Formula::Pred("=".into(), vec![l, r])
    }

    pub fn set_atom(name: impl Into<String>, t: Term) -> Formula {
        Formula::SetAtom(SetRef::Free(name.into()), t)
    }

    pub fn bin(c: Conn, l: Formula, r: Formula) -> Formula {
        Formula::Bin(c, Box::new(l), Box::new(r))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::bin(Conn::And, l, r)
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::bin(Conn::Or, l, r)
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::bin(Conn::Imp, l, r)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::imp(f, Formula::Bot)
    }

    /// `⊤ := ⊥ → ⊥`.
    pub fn top() -> Formula {
        Formula::imp(Formula::Bot, Formula::Bot)
    }

    pub fn is_top(&self) -> bool {
        *self == Formula::top()
    }

    /// Right-nested conjunction; `⊤` when empty.
    pub fn conj(parts: Vec<Formula>) -> Formula {
        let mut it = parts.into_iter().rev();
        match it.next() {
            None => Formula::top(),
            Some(last) => it.fold(last, |acc, f| Formula::and(f, acc)),
        }
    }

    pub fn quant(q: Quant, x: &str, body: &Formula) -> Formula {
        Formula::Quant(q, Box::new(body.close_term_at(0, x)))
    }

    pub fn all(x: &str, body: &Formula) -> Formula {
        Formula::quant(Quant::All, x, body)
    }

    pub fn ex(x: &str, body: &Formula) -> Formula {
        Formula::quant(Quant::Ex, x, body)
    }

    pub fn set_quant(q: Quant, x: &str, body: &Formula) -> Formula {
        Formula::SetQuant(q, Box::new(body.close_set_at(0, x)))
    }

    pub fn all2(x: &str, body: &Formula) -> Formula {
        Formula::set_quant(Quant::All, x, body)
    }

    pub fn ex2(x: &str, body: &Formula) -> Formula {
        Formula::set_quant(Quant::Ex, x, body)
    }

    /// `φ(t)` for a first-order quantified `Qx.φ`.
    pub fn instantiate(&self, t: &Term) -> Option<Formula> {
        match self {
            Formula::Quant(_, body) => Some(body.open_term_at(0, t, 0)),
            _ => None,
        }
    }

    /// `φ(τ)` for a second-order quantified `QX.φ`.
    pub fn instantiate_set(&self, tau: &Abstract) -> Option<Formula> {
        match self {
            Formula::SetQuant(_, body) => Some(body.open_set_at(0, tau, 0)),
            _ => None,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Pred(..) | Formula::SetAtom(..) | Formula::Bot => 1,
            Formula::Bin(_, l, r) => 1 + l.size() + r.size(),
            Formula::Quant(_, b) | Formula::SetQuant(_, b) => 1 + b.size(),
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Pred(..) | Formula::SetAtom(..) | Formula::Bot)
    }

    // ---- free variables -------------------------------------------------

    pub fn collect_free_term_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Pred(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            Formula::SetAtom(_, t) => t.collect_vars(out),
            Formula::Bot => {}
            Formula::Bin(_, l, r) => {
                l.collect_free_term_vars(out);
                r.collect_free_term_vars(out);
            }
            Formula::Quant(_, b) | Formula::SetQuant(_, b) => b.collect_free_term_vars(out),
        }
    }

    /// `Fv(φ)`.
    pub fn free_term_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_term_vars(&mut out);
        out
    }

    pub fn collect_free_set_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::SetAtom(SetRef::Free(x), _) => {
                out.insert(x.clone());
            }
            Formula::Pred(..) | Formula::SetAtom(..) | Formula::Bot => {}
            Formula::Bin(_, l, r) => {
                l.collect_free_set_vars(out);
                r.collect_free_set_vars(out);
            }
            Formula::Quant(_, b) | Formula::SetQuant(_, b) => b.collect_free_set_vars(out),
        }
    }

    /// `FV(φ)`.
    pub fn free_set_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_set_vars(&mut out);
        out
    }

    pub fn has_free_term_var(&self, x: &str) -> bool {
        match self {
            Formula::Pred(_, args) => args.iter().any(|a| a.contains_var(x)),
            Formula::SetAtom(_, t) => t.contains_var(x),
            Formula::Bot => false,
            Formula::Bin(_, l, r) => l.has_free_term_var(x) || r.has_free_term_var(x),
            Formula::Quant(_, b) | Formula::SetQuant(_, b) => b.has_free_term_var(x),
        }
    }

    pub fn has_free_set_var(&self, x: &str) -> bool {
        match self {
            Formula::SetAtom(SetRef::Free(y), _) => y == x,
            Formula::Pred(..) | Formula::SetAtom(..) | Formula::Bot => false,
            Formula::Bin(_, l, r) => l.has_free_set_var(x) || r.has_free_set_var(x),
            Formula::Quant(_, b) | Formula::SetQuant(_, b) => b.has_free_set_var(x),
        }
    }

    /// Predicate symbols with their arities (`=` included).
    pub fn collect_predicates(&self, out: &mut BTreeSet<(String, usize)>) {
        match self {
            Formula::Pred(p, args) => {
                out.insert((p.clone(), args.len()));
            }
            Formula::SetAtom(..) | Formula::Bot => {}
            Formula::Bin(_, l, r) => {
                l.collect_predicates(out);
                r.collect_predicates(out);
            }
            Formula::Quant(_, b) | Formula::SetQuant(_, b) => b.collect_predicates(out),
        }
    }

    pub fn predicates(&self) -> BTreeSet<(String, usize)> {
        let mut out = BTreeSet::new();
        self.collect_predicates(&mut out);
        out
    }

    /// Function symbols with their arities.
    pub fn collect_functions(&self, out: &mut BTreeSet<(String, usize)>) {
        match self {
            Formula::Pred(_, args) => args.iter().for_each(|a| a.collect_symbols(out)),
            Formula::SetAtom(_, t) => t.collect_symbols(out),
            Formula::Bot => {}
            Formula::Bin(_, l, r) => {
                l.collect_functions(out);
                r.collect_functions(out);
            }
            Formula::Quant(_, b) | Formula::SetQuant(_, b) => b.collect_functions(out),
        }
    }

    /// Every locally closed term occurring in the formula, with subterms.
    pub fn collect_closed_terms(&self, out: &mut Vec<Term>) {
        let mut push = |t: &Term| {
            let mut subs = Vec::new();
            t.subterms(&mut subs);
            out.extend(subs.into_iter().filter(Term::is_locally_closed));
        };
        match self {
            Formula::Pred(_, args) => args.iter().for_each(&mut push),
            Formula::SetAtom(_, t) => push(t),
            Formula::Bot => {}
            Formula::Bin(_, l, r) => {
                l.collect_closed_terms(out);
                r.collect_closed_terms(out);
            }
            Formula::Quant(_, b) | Formula::SetQuant(_, b) => b.collect_closed_terms(out),
        }
    }

    /// No dangling term or set indices.
    pub fn is_locally_closed(&self) -> bool {
        self.max_loose_term(0).is_none() && self.max_loose_set(0).is_none()
    }

    pub(crate) fn max_loose_term(&self, depth: usize) -> Option<usize> {
        match self {
            Formula::Pred(_, args) => args.iter().filter_map(|a| a.max_loose(depth)).max(),
            Formula::SetAtom(_, t) => t.max_loose(depth),
            Formula::Bot => None,
            Formula::Bin(_, l, r) => l.max_loose_term(depth).max(r.max_loose_term(depth)),
            Formula::Quant(_, b) => b.max_loose_term(depth + 1),
            Formula::SetQuant(_, b) => b.max_loose_term(depth),
        }
    }

    pub(crate) fn max_loose_set(&self, depth: usize) -> Option<usize> {
        match self {
            Formula::SetAtom(SetRef::Bound(i), _) if *i >= depth => Some(i - depth),
            Formula::Pred(..) | Formula::SetAtom(..) | Formula::Bot => None,
            Formula::Bin(_, l, r) => l.max_loose_set(depth).max(r.max_loose_set(depth)),
            Formula::Quant(_, b) => b.max_loose_set(depth),
            Formula::SetQuant(_, b) => b.max_loose_set(depth + 1),
        }
    }

    // ---- binder plumbing ------------------------------------------------

    /// Replaces term index `depth` by `t`; `t` is relative to depth 0 and
    /// gets shifted while descending under term binders. `tdepth` counts the
    /// term binders already crossed.
    pub(crate) fn open_term_at(&self, depth: usize, t: &Term, crossed: usize) -> Formula {
        let shifted = || if crossed == 0 { t.clone() } else { t.shift(crossed, 0) };
        match self {
            Formula::Pred(p, args) => {
                let r = shifted();
                Formula::Pred(p.clone(), args.iter().map(|a| a.open_at(depth, &r)).collect())
            }
            Formula::SetAtom(x, u) => Formula::SetAtom(x.clone(), u.open_at(depth, &shifted())),
            Formula::Bot => Formula::Bot,
            Formula::Bin(c, l, r) => {
                Formula::bin(*c, l.open_term_at(depth, t, crossed), r.open_term_at(depth, t, crossed))
            }
            Formula::Quant(q, b) => Formula::Quant(*q, Box::new(b.open_term_at(depth + 1, t, crossed + 1))),
            Formula::SetQuant(q, b) => Formula::SetQuant(*q, Box::new(b.open_term_at(depth, t, crossed))),
        }
    }

    pub(crate) fn close_term_at(&self, depth: usize, x: &str) -> Formula {
        match self {
            Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(|a| a.close_at(depth, x)).collect()),
            Formula::SetAtom(s, u) => Formula::SetAtom(s.clone(), u.close_at(depth, x)),
            Formula::Bot => Formula::Bot,
            Formula::Bin(c, l, r) => Formula::bin(*c, l.close_term_at(depth, x), r.close_term_at(depth, x)),
            Formula::Quant(q, b) => Formula::Quant(*q, Box::new(b.close_term_at(depth + 1, x))),
            Formula::SetQuant(q, b) => Formula::SetQuant(*q, Box::new(b.close_term_at(depth, x))),
        }
    }

    /// Replaces set index `depth` by the abstract `tau`. `tdepth` counts term
    /// binders crossed, so that `τ(t)` receives `t` untouched.
    pub(crate) fn open_set_at(&self, depth: usize, tau: &Abstract, tdepth: usize) -> Formula {
        match self {
            Formula::SetAtom(SetRef::Bound(i), t) if *i == depth => {
                let _ = tdepth;
                tau.apply(t)
            }
            Formula::SetAtom(SetRef::Bound(i), t) if *i > depth => Formula::SetAtom(SetRef::Bound(i - 1), t.clone()),
            Formula::Pred(..) | Formula::SetAtom(..) | Formula::Bot => self.clone(),
            Formula::Bin(c, l, r) => {
                Formula::bin(*c, l.open_set_at(depth, tau, tdepth), r.open_set_at(depth, tau, tdepth))
            }
            Formula::Quant(q, b) => Formula::Quant(*q, Box::new(b.open_set_at(depth, tau, tdepth + 1))),
            Formula::SetQuant(q, b) => Formula::SetQuant(*q, Box::new(b.open_set_at(depth + 1, tau, tdepth))),
        }
    }

    pub(crate) fn close_set_at(&self, depth: usize, x: &str) -> Formula {
        match self {
            Formula::SetAtom(SetRef::Free(y), t) if y == x => Formula::SetAtom(SetRef::Bound(depth), t.clone()),
            Formula::SetAtom(SetRef::Bound(i), t) if *i >= depth => Formula::SetAtom(SetRef::Bound(i + 1), t.clone()),
            Formula::Pred(..) | Formula::SetAtom(..) | Formula::Bot => self.clone(),
            Formula::Bin(c, l, r) => Formula::bin(*c, l.close_set_at(depth, x), r.close_set_at(depth, x)),
            Formula::Quant(q, b) => Formula::Quant(*q, Box::new(b.close_set_at(depth, x))),
            Formula::SetQuant(q, b) => Formula::SetQuant(*q, Box::new(b.close_set_at(depth + 1, x))),
        }
    }

    // ---- substitution ---------------------------------------------------

    /// Capture-avoiding `φ[t/x]` for a free term variable `x`.
    pub fn subst_term(&self, x: &str, t: &Term) -> Formula {
        debug_assert!(t.is_locally_closed());
        match self {
            Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(|a| a.subst_var(x, t)).collect()),
            Formula::SetAtom(s, u) => Formula::SetAtom(s.clone(), u.subst_var(x, t)),
            Formula::Bot => Formula::Bot,
            Formula::Bin(c, l, r) => Formula::bin(*c, l.subst_term(x, t), r.subst_term(x, t)),
            Formula::Quant(q, b) => Formula::Quant(*q, Box::new(b.subst_term(x, t))),
            Formula::SetQuant(q, b) => Formula::SetQuant(*q, Box::new(b.subst_term(x, t))),
        }
    }

    /// `φ[τ/X]`: every atom `X(t)` becomes `τ(t)`.
    pub fn subst_set(&self, x: &str, tau: &Abstract) -> Formula {
        match self {
            Formula::SetAtom(SetRef::Free(y), t) if y == x => tau.apply(t),
            Formula::Pred(..) | Formula::SetAtom(..) | Formula::Bot => self.clone(),
            Formula::Bin(c, l, r) => Formula::bin(*c, l.subst_set(x, tau), r.subst_set(x, tau)),
            Formula::Quant(q, b) => Formula::Quant(*q, Box::new(b.subst_set(x, tau))),
            Formula::SetQuant(q, b) => Formula::SetQuant(*q, Box::new(b.subst_set(x, tau))),
        }
    }

    // ---- stratification -------------------------------------------------

    /// Least parameter-free level.
    pub fn level(&self) -> Level {
        match self.level_raw() {
            Some(l) => Level::At(l),
            None => Level::NotParameterFree,
        }
    }

    fn level_raw(&self) -> Option<i32> {
        match self {
            Formula::Pred(..) | Formula::SetAtom(..) | Formula::Bot => Some(-1),
            Formula::Bin(_, l, r) => Some(l.level_raw()?.max(r.level_raw()?)),
            Formula::Quant(_, b) => b.level_raw(),
            Formula::SetQuant(_, b) => {
                let inner = b.level_raw()?;
                let closed = b.free_set_vars().is_empty() && b.max_loose_set(0).unwrap_or(0) == 0;
                closed.then_some(inner + 1)
            }
        }
    }

    /// Cut rank: atoms and second-order quantified formulas have rank 0.
    pub fn rank(&self) -> usize {
        match self {
            Formula::Pred(..) | Formula::SetAtom(..) | Formula::Bot | Formula::SetQuant(..) => 0,
            Formula::Bin(_, l, r) => l.rank().max(r.rank()) + 1,
            Formula::Quant(_, b) => b.rank() + 1,
        }
    }

    /// Every free occurrence of `X` is positive (sign flips left of `→`).
    pub fn positive_in(&self, x: &str) -> bool {
        self.sign_ok(x, true)
    }

    /// Every free occurrence of `X` is negative.
    pub fn negative_in(&self, x: &str) -> bool {
        self.sign_ok(x, false)
    }

    fn sign_ok(&self, x: &str, positive: bool) -> bool {
        match self {
            Formula::SetAtom(SetRef::Free(y), _) if y == x => positive,
            Formula::Pred(..) | Formula::SetAtom(..) | Formula::Bot => true,
            Formula::Bin(Conn::Imp, l, r) => l.sign_ok(x, !positive) && r.sign_ok(x, positive),
            Formula::Bin(_, l, r) => l.sign_ok(x, positive) && r.sign_ok(x, positive),
            Formula::Quant(_, b) | Formula::SetQuant(_, b) => b.sign_ok(x, positive),
        }
    }
}
