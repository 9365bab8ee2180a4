//! Finite posets, lattices and Heyting algebras stored as order matrices.
//! Operation tables are always derived from the order.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    leq: Vec<Vec<bool>>,
    labels: Vec<String>,
}

impl Poset {
    pub fn new(leq: Vec<Vec<bool>>) -> Result<Poset> {
        let labels = (0..leq.len()).map(|i| i.to_string()).collect();
        Poset::with_labels(leq, labels)
    }

    pub fn with_labels(leq: Vec<Vec<bool>>, labels: Vec<String>) -> Result<Poset> {
        let n = leq.len();
        if labels.len() != n {
            return Err(Error::IndexOutOfRange(format!("{} labels for {n} elements", labels.len())));
        }
        if let Some(i) = leq.iter().position(|r| r.len() != n) {
            return Err(Error::NotAPartialOrder(format!("row {i} has the wrong length")));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(Error::NotAPartialOrder(format!("reflexivity at {}", labels[a])));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::NotAPartialOrder(format!("antisymmetry at {}, {}", labels[a], labels[b])));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        let l = |i: usize| labels[i].clone();
                        return Err(Error::NotAPartialOrder(format!("transitivity at {}, {}, {}", l(a), l(b), l(c))));
                    }
                }
            }
        }
        Ok(Poset { leq, labels })
    }

    /// Reflexive-transitive closure of the given pairs `(a, b)` meaning `a ≤ b`.
    pub fn generated(n: usize, pairs: &[(usize, usize)]) -> Result<Poset> {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange(format!("pair ({a}, {b}) with {n} elements")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        Poset::new(leq)
    }

    pub fn chain(n: usize) -> Poset {
        let leq = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        Poset::new(leq).expect("chain")
    }

    pub fn antichain(n: usize) -> Poset {
        let leq = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        Poset::new(leq).expect("antichain")
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn matrix(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn relabel(mut self, labels: Vec<String>) -> Result<Poset> {
        if labels.len() != self.len() {
            return Err(Error::IndexOutOfRange(format!("{} labels for {} elements", labels.len(), self.len())));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Least upper bound of the elements, if one exists.
    pub fn lub(&self, xs: impl IntoIterator<Item = usize> + Clone) -> Option<usize> {
        let ubs: Vec<usize> = (0..self.len()).filter(|&u| xs.clone().into_iter().all(|x| self.leq[x][u])).collect();
        ubs.iter().copied().find(|&u| ubs.iter().all(|&v| self.leq[u][v]))
    }

    /// Greatest lower bound of the elements, if one exists.
    pub fn glb(&self, xs: impl IntoIterator<Item = usize> + Clone) -> Option<usize> {
        let lbs: Vec<usize> = (0..self.len()).filter(|&l| xs.clone().into_iter().all(|x| self.leq[l][x])).collect();
        lbs.iter().copied().find(|&l| lbs.iter().all(|&v| self.leq[v][l]))
    }

    /// Cover pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let lt = |a: usize, b: usize| a != b && self.leq[a][b];
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_order_preserving(&self, target: &Poset, map: &[usize]) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| !self.leq[a][b] || target.leq[map[a]][map[b]]))
    }

    pub fn is_order_embedding(&self, target: &Poset, map: &[usize]) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.leq[a][b] == target.leq[map[a]][map[b]]))
    }

    /// An order isomorphism onto `other`, found by backtracking.
    pub fn isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let profile = |p: &Poset, a: usize| {
            let below = (0..n).filter(|&b| p.leq[b][a]).count();
            let above = (0..n).filter(|&b| p.leq[a][b]).count();
            (below, above)
        };
        let mine: Vec<_> = (0..n).map(|a| profile(self, a)).collect();
        let theirs: Vec<_> = (0..n).map(|a| profile(other, a)).collect();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            p: &Poset,
            q: &Poset,
            i: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            mine: &[(usize, usize)],
            theirs: &[(usize, usize)],
        ) -> bool {
            let n = p.len();
            if i == n {
                return true;
            }
            for c in 0..n {
                if used[c] || mine[i] != theirs[c] {
                    continue;
                }
                if (0..i).all(|j| p.leq[i][j] == q.leq[c][map[j]] && p.leq[j][i] == q.leq[map[j]][c]) {
                    map[i] = c;
                    used[c] = true;
                    if go(p, q, i + 1, map, used, mine, theirs) {
                        return true;
                    }
                    used[c] = false;
                }
            }
            false
        }
        go(self, other, 0, &mut map, &mut used, &mine, &theirs).then_some(map)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    poset: Poset,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    bot: usize,
    top: usize,
}

impl Lattice {
    pub fn new(poset: Poset) -> Result<Lattice> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::NotALattice("empty carrier".into()));
        }
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let l = |x: usize| poset.label(x).to_string();
                meet[a][b] = poset.glb([a, b]).ok_or_else(|| Error::NotALattice(format!("no meet of {}, {}", l(a), l(b))))?;
                join[a][b] = poset.lub([a, b]).ok_or_else(|| Error::NotALattice(format!("no join of {}, {}", l(a), l(b))))?;
            }
        }
        let bot = poset.glb(0..n).expect("finite lattice has a bottom");
        let top = poset.lub(0..n).expect("finite lattice has a top");
        Ok(Lattice { poset, meet, join, bot, top })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bot, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c))))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeytingAlgebra {
    lattice: Lattice,
    imp: Vec<Vec<usize>>,
}

impl HeytingAlgebra {
    pub fn new(lattice: Lattice) -> Result<HeytingAlgebra> {
        let n = lattice.len();
        let mut imp = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let c = lattice.join_all((0..n).filter(|&c| lattice.leq(lattice.meet(a, c), b)));
                if !lattice.leq(lattice.meet(a, c), b) {
                    let l = |x: usize| lattice.poset.label(x).to_string();
                    return Err(Error::NotHeyting(format!("no relative pseudocomplement {} -> {}", l(a), l(b))));
                }
                imp[a][b] = c;
            }
        }
        Ok(HeytingAlgebra { lattice, imp })
    }

    pub fn from_order(leq: Vec<Vec<bool>>, labels: Option<Vec<String>>) -> Result<HeytingAlgebra> {
        let poset = match labels {
            Some(l) => Poset::with_labels(leq, l)?,
            None => Poset::new(leq)?,
        };
        let lattice = Lattice::new(poset).map_err(|e| Error::NotHeyting(e.to_string()))?;
        HeytingAlgebra::new(lattice)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> HeytingAlgebra {
        HeytingAlgebra::new(Lattice::new(Poset::chain(n)).expect("chain")).expect("chain")
    }

    /// The three-element chain labelled `0`, `0.5`, `1`.
    pub fn three_chain() -> HeytingAlgebra {
        let p = Poset::chain(3).relabel(vec!["0".into(), "0.5".into(), "1".into()]).expect("labels");
        HeytingAlgebra::new(Lattice::new(p).expect("chain")).expect("chain")
    }

    /// The Boolean algebra of subsets of a `k`-element set.
    pub fn boolean(k: usize) -> HeytingAlgebra {
        let n = 1usize << k;
        let leq = (0..n).map(|a| (0..n).map(|b| a & !b == 0).collect()).collect();
        let labels = (0..n).map(|a| format!("{a:0k$b}")).collect();
        let p = Poset::with_labels(leq, labels).expect("powerset order");
        HeytingAlgebra::new(Lattice::new(p).expect("powerset")).expect("powerset")
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn poset(&self) -> &Poset {
        &self.lattice.poset
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.lattice.leq(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.lattice.meet(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.lattice.join(a, b)
    }

    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp[a][b]
    }

    pub fn bot(&self) -> usize {
        self.lattice.bot
    }

    pub fn top(&self) -> usize {
        self.lattice.top
    }

    pub fn label(&self, a: usize) -> &str {
        self.lattice.poset.label(a)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.poset().labels().iter().position(|l| l == label)
    }

    /// `a ∧ b ≤ c ⇔ b ≤ a → c` for all triples.
    pub fn residuation_holds(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.leq(self.meet(a, b), c) == self.leq(b, self.imp(a, c)))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_order_errors() {
        assert!(matches!(Poset::new(vec![vec![false]]), Err(Error::NotAPartialOrder(_))));
        let cyc = vec![vec![true, true], vec![true, true]];
        assert!(matches!(Poset::new(cyc), Err(Error::NotAPartialOrder(_))));
        let nt = vec![vec![true, true, false], vec![false, true, true], vec![false, false, true]];
        assert!(matches!(Poset::new(nt), Err(Error::NotAPartialOrder(_))));
    }

    #[test]
    fn three_chain_implication() {
        let h = HeytingAlgebra::three_chain();
        let (z, m, o) = (0, 1, 2);
        assert_eq!(h.imp(m, z), z);
        assert_eq!(h.imp(o, m), m);
        assert_eq!(h.imp(m, o), o);
        assert_eq!(h.imp(z, z), o);
        assert!(h.residuation_holds());
    }

    #[test]
    fn pentagon_is_not_heyting() {
        // 0 < a < b < 1, 0 < c < 1
        let p = Poset::generated(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        let l = Lattice::new(p).unwrap();
        assert!(!l.is_distributive());
        assert!(matches!(HeytingAlgebra::new(l), Err(Error::NotHeyting(_))));
        assert!(matches!(Lattice::new(Poset::antichain(2)), Err(Error::NotALattice(_))));
    }

    #[test]
    fn boolean_algebra_and_isomorphism() {
        let b = HeytingAlgebra::boolean(2);
        assert_eq!(b.len(), 4);
        assert!(b.residuation_holds());
        let square = Poset::generated(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(b.poset().isomorphism(&square).is_some());
        assert!(Poset::chain(4).isomorphism(&square).is_none());
        assert_eq!(square.hasse_edges(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }
}
