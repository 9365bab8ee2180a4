//! Polarities `⟨W, W′, R⟩`, their Galois connection and closed-set lattices.
//! Subsets are bit masks, so both carriers hold at most 64 elements.

use super::order::{Lattice, Poset};
use crate::error::{Error, Result};

pub type Bits = u64;

pub fn members(s: Bits) -> impl Iterator<Item = usize> + Clone {
    (0..64).filter(move |i| s & (1 << i) != 0)
}

pub fn full(n: usize) -> Bits {
    if n >= 64 {
        Bits::MAX
    } else {
        (1 << n) - 1
    }
}

pub fn from_members(xs: impl IntoIterator<Item = usize>) -> Bits {
    xs.into_iter().fold(0, |acc, i| acc | (1 << i))
}

pub const MAX_CARRIER: usize = 64;

/// Default bound on `|W|` for closed-set enumeration.
pub const DEFAULT_BOUND: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Up,
    Down,
    Closure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarity {
    w: usize,
    w2: usize,
    /// `rows[x]` is the set of `z ∈ W′` with `x R z`.
    rows: Vec<Bits>,
}

impl Polarity {
    pub fn new(rel: &[Vec<bool>], w2: usize) -> Result<Polarity> {
        if rel.len() > MAX_CARRIER || w2 > MAX_CARRIER {
            return Err(Error::IndexOutOfRange(format!("carriers larger than {MAX_CARRIER}")));
        }
        if let Some(x) = rel.iter().position(|r| r.len() != w2) {
            return Err(Error::IndexOutOfRange(format!("relation row {x} does not have {w2} entries")));
        }
        let rows = rel.iter().map(|r| from_members(r.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i))).collect();
        Ok(Polarity { w: rel.len(), w2, rows })
    }

    pub fn from_pairs(w: usize, w2: usize, pairs: &[(usize, usize)]) -> Result<Polarity> {
        let mut rel = vec![vec![false; w2]; w];
        for &(x, z) in pairs {
            if x >= w || z >= w2 {
                return Err(Error::IndexOutOfRange(format!("pair ({x}, {z})")));
            }
            rel[x][z] = true;
        }
        Polarity::new(&rel, w2)
    }

    /// `⟨P, P, ≤⟩`.
    pub fn of_poset(p: &Poset) -> Polarity {
        Polarity::new(p.matrix(), p.len()).expect("square order matrix")
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn w2(&self) -> usize {
        self.w2
    }

    pub fn related(&self, x: usize, z: usize) -> bool {
        self.rows[x] & (1 << z) != 0
    }

    pub fn row(&self, x: usize) -> Bits {
        self.rows[x]
    }

    fn check(s: Bits, n: usize, what: &str) -> Result<()> {
        if s & !full(n) != 0 {
            return Err(Error::IndexOutOfRange(format!("subset of {what} mentions an element beyond {n}")));
        }
        Ok(())
    }

    /// `S^▷ = {z : x R z for all x ∈ S}`.
    pub fn up(&self, s: Bits) -> Bits {
        members(s).fold(full(self.w2), |acc, x| acc & self.rows[x])
    }

    /// `T^◁ = {x : x R z for all z ∈ T}`.
    pub fn down(&self, t: Bits) -> Bits {
        from_members((0..self.w).filter(|&x| t & !self.rows[x] == 0))
    }

    pub fn closure(&self, s: Bits) -> Bits {
        self.down(self.up(s))
    }

    pub fn galois(&self, side: Side, s: Bits) -> Result<Bits> {
        match side {
            Side::Up | Side::Closure => Polarity::check(s, self.w, "W")?,
            Side::Down => Polarity::check(s, self.w2, "W'")?,
        }
        Ok(match side {
            Side::Up => self.up(s),
            Side::Down => self.down(s),
            Side::Closure => self.closure(s),
        })
    }

    /// Closed sets by closing every subset of `W`.
    pub fn closed_sets_brute(&self) -> Vec<Bits> {
        let mut out: Vec<Bits> = (0..=full(self.w)).map(|s| self.closure(s)).collect();
        sort_sets(&mut out);
        out
    }

    /// Closed sets as intersections of the extents `{z}^◁`.
    pub fn closed_sets_by_intersection(&self) -> Vec<Bits> {
        let mut out = vec![full(self.w)];
        for z in 0..self.w2 {
            let ext = self.down(1 << z);
            let mut add: Vec<Bits> = out.iter().map(|c| c & ext).collect();
            out.append(&mut add);
            sort_sets(&mut out);
        }
        out
    }
}

fn sort_sets(v: &mut Vec<Bits>) {
    v.sort_by_key(|s| (s.count_ones(), *s));
    v.dedup();
}

/// `Gal(W)` ordered by inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedSetLattice {
    pub polarity: Polarity,
    pub sets: Vec<Bits>,
    pub lattice: Lattice,
}

impl ClosedSetLattice {
    pub fn index_of(&self, s: Bits) -> Option<usize> {
        self.sets.iter().position(|&c| c == s)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of `γ(S)`.
    pub fn gamma(&self, s: Bits) -> usize {
        self.index_of(self.polarity.closure(s)).expect("closures are enumerated")
    }
}

/// Enumerates `Gal(W)` for a polarity with `|W| ≤ bound`.
pub fn concept_lattice(p: &Polarity, bound: usize) -> Result<ClosedSetLattice> {
    if p.w() > bound.min(MAX_CARRIER - 1) {
        return Err(Error::SizeBound { size: p.w(), bound });
    }
    let sets = if p.w() <= 12 { p.closed_sets_brute() } else { p.closed_sets_by_intersection() };
    let n = sets.len();
    let leq = (0..n).map(|i| (0..n).map(|j| sets[i] & !sets[j] == 0).collect()).collect();
    let labels = sets.iter().map(|&s| format_set(s)).collect();
    let poset = Poset::with_labels(leq, labels)?;
    let lattice = Lattice::new(poset)?;
    for i in 0..n {
        for j in 0..n {
            let m = sets[i] & sets[j];
            debug_assert_eq!(sets[lattice.meet(i, j)], m);
            debug_assert_eq!(sets[lattice.join(i, j)], p.closure(sets[i] | sets[j]));
        }
    }
    Ok(ClosedSetLattice { polarity: p.clone(), sets, lattice })
}

pub fn format_set(s: Bits) -> String {
    let xs: Vec<String> = members(s).map(|i| i.to_string()).collect();
    format!("{{{}}}", xs.join(","))
}
