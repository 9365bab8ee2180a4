//! MacNeille completions through the polarity `⟨A, A, ≤⟩`, density and
//! regularity of embeddings into finite lattices.

use super::order::{HeytingAlgebra, Lattice, Poset};
use super::polarity::{concept_lattice, members, ClosedSetLattice, Polarity, DEFAULT_BOUND};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    AsLattice,
    AsHeyting,
}

/// An order-preserving map from a finite poset into a finite lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub source: Poset,
    pub target: Lattice,
    pub map: Vec<usize>,
}

impl Embedding {
    pub fn new(source: Poset, target: Lattice, map: Vec<usize>) -> Result<Embedding> {
        if map.len() != source.len() || map.iter().any(|&m| m >= target.len()) {
            return Err(Error::IndexOutOfRange("embedding map does not fit its carriers".into()));
        }
        if !source.is_order_preserving(target.poset(), &map) {
            return Err(Error::Precondition("map is not order-preserving".into()));
        }
        Ok(Embedding { source, target, map })
    }

    pub fn identity(l: &Lattice) -> Embedding {
        Embedding { source: l.poset().clone(), target: l.clone(), map: (0..l.len()).collect() }
    }

    pub fn is_order_embedding(&self) -> bool {
        self.source.is_order_embedding(self.target.poset(), &self.map)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub closed: ClosedSetLattice,
    pub embedding: Embedding,
    /// Present for [`Mode::AsHeyting`].
    pub algebra: Option<HeytingAlgebra>,
}

/// The completion `⟨A, A, ≤⟩⁺` with `a ↦ γ(a)`. With [`Mode::AsHeyting`] the
/// input must be a Heyting algebra and `γ` is checked to preserve its operations.
pub fn macneille(p: &Poset, mode: Mode) -> Result<Completion> {
    let source_algebra = match mode {
        Mode::AsLattice => None,
        Mode::AsHeyting => {
            let l = Lattice::new(p.clone()).map_err(|e| Error::NotHeyting(e.to_string()))?;
            Some(HeytingAlgebra::new(l)?)
        }
    };
    let polarity = Polarity::of_poset(p);
    let closed = concept_lattice(&polarity, DEFAULT_BOUND)?;
    let map: Vec<usize> = (0..p.len()).map(|a| closed.gamma(1 << a)).collect();
    let embedding = Embedding { source: p.clone(), target: closed.lattice.clone(), map };
    debug_assert!(embedding.is_order_embedding());
    let algebra = match source_algebra {
        None => None,
        Some(src) => {
            let target = HeytingAlgebra::new(closed.lattice.clone())?;
            if let Some(op) = heyting_preservation_failure(&src, &target, &embedding.map) {
                return Err(Error::NotHeyting(format!("the embedding does not preserve {op}")));
            }
            Some(target)
        }
    };
    Ok(Completion { closed, embedding, algebra })
}

/// Names the first Heyting operation not preserved by `map`, if any.
pub fn heyting_preservation_failure(src: &HeytingAlgebra, dst: &HeytingAlgebra, map: &[usize]) -> Option<&'static str> {
    let n = src.len();
    if map[src.bot()] != dst.bot() {
        return Some("bottom");
    }
    if map[src.top()] != dst.top() {
        return Some("top");
    }
    let ops: [(&'static str, fn(&HeytingAlgebra, usize, usize) -> usize); 3] =
        [("meet", HeytingAlgebra::meet), ("join", HeytingAlgebra::join), ("implication", HeytingAlgebra::imp)];
    for (name, op) in ops {
        if !(0..n).all(|a| (0..n).all(|b| map[op(src, a, b)] == op(dst, map[a], map[b]))) {
            return Some(name);
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Density {
    pub join_dense: bool,
    pub meet_dense: bool,
    /// Whether the infinitary-rule formulation gave the same answers.
    pub rules_agree: bool,
}

fn density_at(emb: &Embedding, x: usize) -> Density {
    let t = &emb.target;
    let img = &emb.map;
    let join_dense = t.join_all(img.iter().copied().filter(|&a| t.leq(a, x))) == x;
    let meet_dense = t.meet_all(img.iter().copied().filter(|&a| t.leq(x, a))) == x;
    // x ≤ y whenever every a ≤ x has a ≤ y
    let left_rule = (0..t.len()).all(|y| !img.iter().all(|&a| !t.leq(a, x) || t.leq(a, y)) || t.leq(x, y));
    // y ≤ x whenever every a ≥ x has a ≥ y
    let right_rule = (0..t.len()).all(|y| !img.iter().all(|&a| !t.leq(x, a) || t.leq(y, a)) || t.leq(y, x));
    Density { join_dense, meet_dense, rules_agree: left_rule == join_dense && right_rule == meet_dense }
}

/// Density at one target element, or conjunctively over all of them.
pub fn density_check(emb: &Embedding, at: Option<usize>) -> Result<Density> {
    match at {
        Some(x) if x >= emb.target.len() => Err(Error::IndexOutOfRange(format!("element {x}"))),
        Some(x) => Ok(density_at(emb, x)),
        None => Ok((0..emb.target.len()).map(|x| density_at(emb, x)).fold(
            Density { join_dense: true, meet_dense: true, rules_agree: true },
            |acc, d| Density {
                join_dense: acc.join_dense && d.join_dense,
                meet_dense: acc.meet_dense && d.meet_dense,
                rules_agree: acc.rules_agree && d.rules_agree,
            },
        )),
    }
}

/// Every join and meet that exists in the source is preserved.
pub fn regularity_check(emb: &Embedding) -> Result<bool> {
    let n = emb.source.len();
    if n > 20 {
        return Err(Error::SizeBound { size: n, bound: 20 });
    }
    let t = &emb.target;
    for s in 0u64..(1 << n) {
        let xs = members(s);
        let imgs = xs.clone().map(|a| emb.map[a]);
        if let Some(b) = emb.source.lub(xs.clone()) {
            if emb.map[b] != t.join_all(imgs.clone()) {
                return Ok(false);
            }
        }
        if let Some(b) = emb.source.glb(xs) {
            if emb.map[b] != t.meet_all(imgs) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antichain_gains_bounds() {
        let c = macneille(&Poset::antichain(2), Mode::AsLattice).unwrap();
        assert_eq!(c.closed.len(), 4);
        assert!(c.embedding.is_order_embedding());
        let d = density_check(&c.embedding, None).unwrap();
        assert!(d.join_dense && d.meet_dense && d.rules_agree);
        assert!(regularity_check(&c.embedding).unwrap());
        assert!(matches!(macneille(&Poset::antichain(2), Mode::AsHeyting), Err(Error::NotHeyting(_))));
    }

    #[test]
    fn three_chain_is_complete() {
        let h = HeytingAlgebra::three_chain();
        let c = macneille(h.poset(), Mode::AsHeyting).unwrap();
        let g = &c.embedding.map;
        let alg = c.algebra.unwrap();
        assert_eq!(alg.len(), 3);
        assert_eq!(g[h.imp(1, 0)], g[0]);
        assert_eq!(alg.imp(g[1], g[0]), g[0]);
    }

    #[test]
    fn sublattice_of_chain_is_not_dense() {
        let chain = Lattice::new(Poset::chain(3)).unwrap();
        let emb = Embedding::new(Poset::chain(2), chain, vec![0, 2]).unwrap();
        let d = density_check(&emb, Some(1)).unwrap();
        assert!(!d.join_dense && !d.meet_dense && d.rules_agree);
        assert!(density_check(&emb, Some(0)).unwrap().join_dense);
    }

    #[test]
    fn misplaced_join_is_not_regular() {
        let b = HeytingAlgebra::boolean(2);
        let chain = Lattice::new(Poset::chain(5)).unwrap();
        // 00 -> 0, 01 -> 1, 10 -> 2, 11 -> 4
        let emb = Embedding::new(b.poset().clone(), chain, vec![0, 1, 2, 4]).unwrap();
        assert!(!regularity_check(&emb).unwrap());
        let id = Embedding::identity(b.lattice());
        assert!(regularity_check(&id).unwrap());
        assert!(density_check(&id, None).unwrap().join_dense);
    }
}
