mod common;

use omegalab::lattice::catalogue::{heyting_catalogue, lattices, posets};
use omegalab::lattice::{
    concept_lattice, density_check, frame_plus, macneille, regularity_check, Bits, Mode, Polarity, Poset, Side,
};
use proptest::prelude::*;

fn polarity_strategy() -> impl Strategy<Value = Polarity> {
    (1usize..=6, 1usize..=6)
        .prop_flat_map(|(w, w2)| (Just(w), Just(w2), proptest::collection::vec(any::<bool>(), w * w2)))
        .prop_map(|(_, w2, bits)| {
            let rel: Vec<Vec<bool>> = bits.chunks(w2).map(|c| c.to_vec()).collect();
            Polarity::new(&rel, w2).unwrap()
        })
}

/// Down-sets of a poset, counted directly.
fn down_sets(p: &Poset) -> usize {
    let n = p.len();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|b| s & (1 << b) == 0 || (0..n).all(|a| !p.leq(a, b) || s & (1 << a) != 0)))
        .count()
}

#[test]
fn poset_counts() {
    // unlabelled posets on n points: 1, 1, 2, 5, 16, 63
    let counts: Vec<usize> = (0..=5).map(|n| posets(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
}

#[test]
fn distributive_lattices_match_down_set_lattices() {
    // a finite distributive lattice is the down-set lattice of its
    // join-irreducibles, so sizes can be counted through posets
    for n in 1..=6 {
        let oracle = (0..n).flat_map(posets).filter(|p| down_sets(p) == n).count();
        let distributive = lattices(n).iter().filter(|l| l.is_distributive()).count();
        let heyting = heyting_catalogue(6).iter().filter(|h| h.len() == n).count();
        assert_eq!(distributive, oracle, "size {n}");
        assert_eq!(heyting, oracle, "size {n}");
    }
    let expected: Vec<usize> = (1..=6).map(|n| heyting_catalogue(6).iter().filter(|h| h.len() == n).count()).collect();
    assert_eq!(expected, vec![1, 1, 1, 2, 3, 5]);
}

#[test]
fn macneille_of_all_small_posets() {
    for n in 1..=5 {
        for p in posets(n) {
            let c = macneille(&p, Mode::AsLattice).unwrap();
            assert!(c.embedding.is_order_embedding());
            let d = density_check(&c.embedding, None).unwrap();
            assert!(d.join_dense && d.meet_dense && d.rules_agree);
            assert!(regularity_check(&c.embedding).unwrap());
        }
    }
}

#[test]
fn macneille_fixes_heyting_algebras() {
    for h in heyting_catalogue(6) {
        let c = macneille(h.poset(), Mode::AsHeyting).unwrap();
        assert!(c.closed.lattice.poset().isomorphism(h.poset()).is_some());
        assert!(c.algebra.is_some());
    }
}

#[test]
fn random_frames() {
    let algebras = heyting_catalogue(6);
    let mut rng = common::rng(5);
    for _ in 0..50 {
        let f = common::frame(&mut rng, &algebras);
        assert!(f.polarity.w() <= 4 && f.polarity.w2() <= 5);
        let plus = frame_plus(&f).unwrap();
        assert!(plus.algebra.lattice().is_distributive());
        assert!(plus.algebra.residuation_holds());
    }
}

proptest! {
    #[test]
    fn galois_connection_laws(p in polarity_strategy(), s in 0 as Bits..64, t in 0 as Bits..64) {
        let s = s & ((1 << p.w()) - 1);
        let t = t & ((1 << p.w2()) - 1);
        // S ⊆ T^◁ iff T ⊆ S^▷
        prop_assert_eq!(s & !p.down(t) == 0, t & !p.up(s) == 0);
        let c = p.closure(s);
        prop_assert_eq!(s & !c, 0);
        prop_assert_eq!(p.closure(c), c);
        prop_assert_eq!(p.up(p.down(p.up(s))), p.up(s));
        prop_assert_eq!(p.galois(Side::Up, s).unwrap(), p.up(s));
    }

    #[test]
    fn closed_set_enumerations_agree(p in polarity_strategy()) {
        prop_assert_eq!(p.closed_sets_brute(), p.closed_sets_by_intersection());
        let l = concept_lattice(&p, 12).unwrap();
        for &a in &l.sets {
            for &b in &l.sets {
                prop_assert!(l.index_of(a & b).is_some());
            }
        }
    }
}
