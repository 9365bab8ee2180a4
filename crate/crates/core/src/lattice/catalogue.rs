//! Small posets, lattices and Heyting algebras up to isomorphism.

use super::order::{HeytingAlgebra, Lattice, Poset};

/// Posets on `n` elements, one per isomorphism class. Every poset has a
/// labelling where `i < j` in the order implies `i < j` as numbers, so only
/// relations above the diagonal are enumerated.
pub fn posets(n: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut reps: Vec<Poset> = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask & (1 << k) != 0 {
                leq[i][j] = true;
            }
        }
        let Ok(p) = Poset::new(leq) else { continue };
        if !reps.iter().any(|r| r.isomorphism(&p).is_some()) {
            reps.push(p);
        }
    }
    reps
}

/// Adds a new least and greatest element.
pub fn with_bounds(p: &Poset) -> Poset {
    let n = p.len() + 2;
    let leq = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (i, j) {
                    (0, _) => true,
                    (_, j) if j == n - 1 => true,
                    (_, 0) => false,
                    (i, _) if i == n - 1 => false,
                    (i, j) => p.leq(i - 1, j - 1),
                })
                .collect()
        })
        .collect();
    Poset::new(leq).expect("bounded extension")
}

/// Lattices with `n ≥ 1` elements up to isomorphism.
pub fn lattices(n: usize) -> Vec<Lattice> {
    match n {
        0 => vec![],
        1 => vec![Lattice::new(Poset::chain(1)).expect("one element")],
        _ => posets(n - 2).iter().filter_map(|p| Lattice::new(with_bounds(p)).ok()).collect(),
    }
}

/// Heyting algebras (finite distributive lattices) with at most `max` elements.
pub fn heyting_catalogue(max: usize) -> Vec<HeytingAlgebra> {
    (1..=max)
        .flat_map(lattices)
        .filter(|l| l.is_distributive())
        .map(|l| HeytingAlgebra::new(l).expect("finite distributive lattices are Heyting"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| posets(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16]);
        let counts: Vec<usize> = (1..=5).map(|n| lattices(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5]);
    }
}
