mod common;

use common::ProofGen;
use omegalab::cut::{eliminate_cuts, eliminate_cuts_with_report};
use omegalab::kernel::{check, Calculus, Derivation};
use proptest::prelude::*;

fn with_cuts(seed: u64, n: usize) -> Vec<Derivation> {
    let mut gen = ProofGen::new(seed, Calculus::Li, true);
    gen.fill(n);
    gen.pool.into_iter().filter(|d| !d.is_cut_free() && d.max_cut_rank().unwrap_or(0) <= 4).collect()
}

fn assert_eliminated(d: &Derivation) {
    let e = eliminate_cuts(d).unwrap();
    assert!(e.is_cut_free());
    assert!(check(&e, Calculus::Li).is_empty(), "{:?}", check(&e, Calculus::Li));
    assert_eq!(e.conclusion, d.conclusion);
}

#[test]
fn generated_corpus() {
    let corpus = with_cuts(11, 300);
    assert!(corpus.len() >= 30, "only {} derivations with cuts", corpus.len());
    for d in &corpus {
        assert_eliminated(d);
    }
}

#[test]
fn report_counts_cuts() {
    for d in with_cuts(12, 80).iter().take(10) {
        let (e, report) = eliminate_cuts_with_report(d).unwrap();
        assert!(e.is_cut_free());
        assert_eq!(report.max_rank_before, d.max_cut_rank());
        assert_eq!(report.nodes_before, d.size());
        assert_eq!(report.nodes_after, e.size());
        assert_eq!(report.passes.last().and_then(|p| p.max_rank_after), None);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn elimination_preserves_endsequent(seed in 0u64..10_000) {
        for d in with_cuts(seed, 40).iter().take(3) {
            assert_eliminated(d);
        }
    }
}
