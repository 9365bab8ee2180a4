//! Heyting frames `⟨W, W′, R, ∘, ε, ⫞⟩` and their algebras of closed sets.

use super::order::HeytingAlgebra;
use super::polarity::{concept_lattice, from_members, members, Bits, ClosedSetLattice, Polarity, DEFAULT_BOUND};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeytingFrame {
    pub polarity: Polarity,
    /// `op[x][y] = x ∘ y`.
    pub op: Vec<Vec<usize>>,
    pub unit: usize,
    /// `res[x][z] = x ⫞ z`.
    pub res: Vec<Vec<usize>>,
}

impl HeytingFrame {
    /// Builds a frame and checks every frame law.
    pub fn new(polarity: Polarity, op: Vec<Vec<usize>>, unit: usize, res: Vec<Vec<usize>>) -> Result<HeytingFrame> {
        let (w, w2) = (polarity.w(), polarity.w2());
        let bad = |what: &str| Err(Error::IndexOutOfRange(what.to_string()));
        if op.len() != w || op.iter().any(|r| r.len() != w || r.iter().any(|&v| v >= w)) {
            return bad("monoid table must be |W| x |W| with entries in W");
        }
        if res.len() != w || res.iter().any(|r| r.len() != w2 || r.iter().any(|&v| v >= w2)) {
            return bad("residual table must be |W| x |W'| with entries in W'");
        }
        if unit >= w {
            return bad("unit outside W");
        }
        let f = HeytingFrame { polarity, op, unit, res };
        f.validate()?;
        Ok(f)
    }

    /// Checks the laws in a fixed order and names the first one that fails.
    pub fn validate(&self) -> Result<()> {
        let w = self.polarity.w();
        let w2 = self.polarity.w2();
        let o = |x: usize, y: usize| self.op[x][y];
        let r = |x: usize, z: usize| self.polarity.related(x, z);
        let fail = |law: &str| Err(Error::NotAHeytingFrame(law.to_string()));
        let all3 = |n1: usize, n2: usize, n3: usize, p: &dyn Fn(usize, usize, usize) -> bool| {
            (0..n1).all(|a| (0..n2).all(|b| (0..n3).all(|c| p(a, b, c))))
        };
        if !all3(w, w, w, &|x, y, z| o(o(x, y), z) == o(x, o(y, z))) {
            return fail("associativity");
        }
        if !(0..w).all(|x| o(self.unit, x) == x && o(x, self.unit) == x) {
            return fail("unit");
        }
        if !all3(w, w, w2, &|x, y, z| r(o(x, y), z) == r(y, self.res[x][z])) {
            return fail("residuation");
        }
        if !all3(w, w, w2, &|x, y, z| !r(o(x, y), z) || r(o(y, x), z)) {
            return fail("exchange");
        }
        if !all3(w, 1, w2, &|x, _, z| !r(self.unit, z) || r(x, z)) {
            return fail("weakening");
        }
        if !all3(w, 1, w2, &|x, _, z| !r(o(x, x), z) || r(x, z)) {
            return fail("contraction");
        }
        Ok(())
    }

    /// `W_A = ⟨A, A, ≤, ∧, ⊤, →⟩`.
    pub fn of_algebra(a: &HeytingAlgebra) -> HeytingFrame {
        let n = a.len();
        HeytingFrame::sub_algebra(a, &(0..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>()).expect("W_A is a frame")
    }

    /// The frame on `W ⊆ A` (a ∧-submonoid containing `⊤`) and `W′ ⊆ A`
    /// (closed under `x → ·` for `x ∈ W`), with `R` the order of `A`.
    pub fn sub_algebra(a: &HeytingAlgebra, w: &[usize], w2: &[usize]) -> Result<HeytingFrame> {
        let pos = |set: &[usize], v: usize, what: &str| {
            set.iter().position(|&e| e == v).ok_or_else(|| Error::Precondition(format!("{what} is not closed")))
        };
        let rel: Vec<Vec<bool>> = w.iter().map(|&x| w2.iter().map(|&z| a.leq(x, z)).collect()).collect();
        let polarity = Polarity::new(&rel, w2.len())?;
        let mut op = Vec::new();
        for &x in w {
            op.push(w.iter().map(|&y| pos(w, a.meet(x, y), "W")).collect::<Result<Vec<_>>>()?);
        }
        let mut res = Vec::new();
        for &x in w {
            res.push(w2.iter().map(|&z| pos(w2, a.imp(x, z), "W'")).collect::<Result<Vec<_>>>()?);
        }
        let unit = pos(w, a.top(), "W")?;
        HeytingFrame::new(polarity, op, unit, res)
    }

    /// `X ∘ Y` as the set of products.
    fn product(&self, x: Bits, y: Bits) -> Bits {
        let mut out = 0;
        for a in members(x) {
            for b in members(y) {
                out |= 1 << self.op[a][b];
            }
        }
        out
    }

    /// `X → Y = {y : x ∘ y ∈ Y for all x ∈ X}`.
    pub fn arrow(&self, x: Bits, y: Bits) -> Bits {
        from_members((0..self.polarity.w()).filter(|&b| self.product(x, 1 << b) & !y == 0))
    }

    /// `X ⫞ T = {x ⫞ z : x ∈ X, z ∈ T}`.
    pub fn residual_set(&self, x: Bits, t: Bits) -> Bits {
        let mut out = 0;
        for a in members(x) {
            for z in members(t) {
                out |= 1 << self.res[a][z];
            }
        }
        out
    }
}

/// `W⁺` with its implication computed on sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramePlus {
    pub closed: ClosedSetLattice,
    pub algebra: HeytingAlgebra,
}

/// Builds `W⁺`, checking that set implication is closed, agrees with
/// `(X ⫞ Y^▷)^◁` and is residuated on all closed triples.
pub fn frame_plus(f: &HeytingFrame) -> Result<FramePlus> {
    f.validate()?;
    let closed = concept_lattice(&f.polarity, DEFAULT_BOUND)?;
    let p = &f.polarity;
    let sets = &closed.sets;
    let n = sets.len();
    let mut imp = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let a = f.arrow(sets[i], sets[j]);
            if a != p.down(f.residual_set(sets[i], p.up(sets[j]))) {
                return Err(Error::NotAHeytingFrame("implication identity".into()));
            }
            imp[i][j] = closed.index_of(a).ok_or_else(|| Error::NotAHeytingFrame("closure of implication".into()))?;
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = sets[x] & sets[y] & !sets[z] == 0;
                let rhs = sets[x] & !sets[imp[y][z]] == 0;
                if lhs != rhs {
                    return Err(Error::NotAHeytingFrame("residuation of closed sets".into()));
                }
            }
        }
    }
    let algebra = HeytingAlgebra::new(closed.lattice.clone())?;
    for (i, row) in imp.iter().enumerate() {
        for (j, &k) in row.iter().enumerate() {
            if algebra.imp(i, j) != k {
                return Err(Error::NotAHeytingFrame("implication agrees with the order".into()));
            }
        }
    }
    Ok(FramePlus { closed, algebra })
}

/// The three-element monoid `{ε, a, 0}` with `a ∘ a = 0`: every law but contraction holds.
pub fn contraction_counterexample() -> (Polarity, Vec<Vec<usize>>, usize, Vec<Vec<usize>>) {
    let (e, a, z) = (0, 1, 2);
    let op = vec![vec![e, a, z], vec![a, z, z], vec![z, z, z]];
    // z1 is related to everything, z2 only to 0, z3 to a and 0
    let polarity = Polarity::from_pairs(3, 3, &[(e, 0), (a, 0), (z, 0), (z, 1), (a, 2), (z, 2)]).expect("pairs");
    let res = vec![vec![0, 1, 2], vec![0, 2, 0], vec![0, 0, 0]];
    (polarity, op, e, res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::order::Lattice;

    #[test]
    fn trivial_frame() {
        let p = Polarity::from_pairs(1, 1, &[(0, 0)]).unwrap();
        let f = HeytingFrame::new(p, vec![vec![0]], 0, vec![vec![0]]).unwrap();
        assert_eq!(frame_plus(&f).unwrap().algebra.len(), 1);
    }

    #[test]
    fn algebra_frames_reproduce_the_algebra() {
        for a in [HeytingAlgebra::three_chain(), HeytingAlgebra::boolean(2), HeytingAlgebra::chain(4)] {
            let plus = frame_plus(&HeytingFrame::of_algebra(&a)).unwrap();
            assert!(plus.algebra.poset().isomorphism(a.poset()).is_some());
            assert!(plus.algebra.lattice().is_distributive());
        }
    }

    #[test]
    fn contraction_failure_is_reported() {
        let (p, op, e, res) = contraction_counterexample();
        let err = HeytingFrame::new(p, op, e, res).unwrap_err();
        assert_eq!(err, Error::NotAHeytingFrame("contraction".into()));
        assert_eq!(err.to_string(), "not a Heyting frame: contraction fails");
    }

    #[test]
    fn broken_residual_is_reported() {
        let (p, op, e, mut res) = contraction_counterexample();
        res[1][1] = 1;
        assert_eq!(HeytingFrame::new(p, op, e, res).unwrap_err(), Error::NotAHeytingFrame("residuation".into()));
    }

    #[test]
    fn sub_frame_of_a_chain() {
        let a = HeytingAlgebra::chain(4);
        let f = HeytingFrame::sub_algebra(&a, &[1, 3], &[0, 1, 3]).unwrap();
        let plus = frame_plus(&f).unwrap();
        assert!(Lattice::new(plus.algebra.poset().clone()).unwrap().is_distributive());
        assert!(HeytingFrame::sub_algebra(&a, &[1, 2], &[0, 3]).is_err());
    }
}
