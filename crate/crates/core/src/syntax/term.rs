use std::collections::BTreeSet;

/// First-order term in locally nameless form.
///
/// Free variables carry names; variables bound by a first-order quantifier (or
/// by the lambda of an [`Abstract`](super::Abstract)) are de Bruijn indices
/// counting term binders only.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Bound(usize),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(name.into(), args)
    }

    pub fn zero() -> Term {
        Term::constant("0")
    }

    pub fn succ(t: Term) -> Term {
        Term::App("s".into(), vec![t])
    }

    /// No dangling de Bruijn indices.
    pub fn is_locally_closed(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::Bound(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_locally_closed),
        }
    }

    /// No variables at all, free or bound.
    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) | Term::Bound(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Bound(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn contains_var(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => y == x,
            Term::Bound(_) => false,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(x)),
        }
    }

    pub fn collect_symbols(&self, out: &mut BTreeSet<(String, usize)>) {
        if let Term::App(f, args) = self {
            out.insert((f.clone(), args.len()));
            args.iter().for_each(|a| a.collect_symbols(out));
        }
    }

    /// Every subterm, including `self`.
    pub fn subterms(&self, out: &mut Vec<Term>) {
        out.push(self.clone());
        if let Term::App(_, args) = self {
            args.iter().for_each(|a| a.subterms(out));
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Bound(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn subst_var(&self, x: &str, t: &Term) -> Term {
        match self {
            Term::Var(y) if y == x => t.clone(),
            Term::Var(_) | Term::Bound(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.subst_var(x, t)).collect()),
        }
    }

    /// Adds `by` to every index `>= cutoff`.
    pub(crate) fn shift(&self, by: usize, cutoff: usize) -> Term {
        match self {
            Term::Bound(i) if *i >= cutoff => Term::Bound(i + by),
            Term::Var(_) | Term::Bound(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.shift(by, cutoff)).collect()),
        }
    }

    /// Replaces index `depth` by `t` (already shifted for this depth) and
    /// lowers the indices above it, removing one binder.
    pub(crate) fn open_at(&self, depth: usize, t: &Term) -> Term {
        match self {
            Term::Bound(i) if *i == depth => t.clone(),
            Term::Bound(i) if *i > depth => Term::Bound(i - 1),
            Term::Var(_) | Term::Bound(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.open_at(depth, t)).collect()),
        }
    }

    /// Turns the free variable `x` into index `depth`, raising the indices
    /// at or above it to make room for the new binder.
    pub(crate) fn close_at(&self, depth: usize, x: &str) -> Term {
        match self {
            Term::Var(y) if y == x => Term::Bound(depth),
            Term::Bound(i) if *i >= depth => Term::Bound(i + 1),
            Term::Var(_) | Term::Bound(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.close_at(depth, x)).collect()),
        }
    }

    pub(crate) fn max_loose(&self, depth: usize) -> Option<usize> {
        match self {
            Term::Bound(i) if *i >= depth => Some(i - depth),
            Term::Var(_) | Term::Bound(_) => None,
            Term::App(_, args) => args.iter().filter_map(|a| a.max_loose(depth)).max(),
        }
    }
}
