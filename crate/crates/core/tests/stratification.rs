mod common;

use common::{substitution_checks, LEVEL_TABLE};
use omegalab::kernel::Calculus;
use omegalab::syntax::{formula_with, Formula, Level};

fn f(s: &str) -> Formula {
    formula_with(s, &["c", "d"]).unwrap()
}

#[test]
fn level_and_rank_table() {
    for &(src, level, rank) in LEVEL_TABLE {
        let phi = f(src);
        assert_eq!(phi.level(), level, "{src}");
        assert_eq!(phi.rank(), rank, "{src}");
    }
}

#[test]
fn substitution_stays_in_level() {
    let checked = substitution_checks(41, 500).unwrap();
    assert!(checked.iter().all(|&c| c > 50), "{checked:?}");
}

#[test]
fn parameters_block_membership() {
    let phi = f("All Y. Y(c) -> X(c)");
    assert_eq!(phi.level(), Level::NotParameterFree);
    assert!(!Calculus::Lip(5).admits(&phi));
    assert!(Calculus::Lit.admits(&phi));
}
