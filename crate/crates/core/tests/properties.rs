//! Randomized invariants: axiom 2 against the equivariance law, the
//! extension/decomposition round trip and canonical-form invariance.

mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use quandle_core::catalog::catalog;
use quandle_core::construct::dynamical_extension;
use quandle_core::iso::canonical_form;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn axiom_two_matches_equivariance(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let rows = common::random_column_table(&mut rng);
        prop_assert_eq!(common::check_axiom_equivalence(&rows), Ok(()));
    }

    #[test]
    fn accepted_tables_are_equivariant(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let rows = common::random_column_table(&mut rng);
        if let Ok(q) = quandle_core::quandle::verify_axioms(&rows) {
            prop_assert!(common::equivariance_holds(&q));
        }
    }

    #[test]
    fn extension_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let cases = common::round_trip_cases(&mut rng);
        for c in &cases {
            prop_assert!(c.base().order() * c.fiber() <= 12);
            prop_assert_eq!(common::check_round_trip(&mut rng, c), Ok(()));
        }
    }
}

#[test]
fn canonical_form_ignores_relabeling() {
    let mut rng = StdRng::seed_from_u64(17);
    for e in catalog() {
        assert_eq!(common::check_canonical_invariance(&mut rng, &e.table, 100), Ok(()), "{}", e.name);
    }
}

#[test]
fn trivializable_cocycles_give_products() {
    let mut rng = StdRng::seed_from_u64(3);
    for e in catalog().iter().filter(|e| e.table.order() <= 6) {
        let c = common::random_trivializable_cocycle(&mut rng, &e.table, 2);
        let ext = dynamical_extension(&c).unwrap();
        let product = quandle_core::construct::product_quandle(&e.table, &quandle_core::QuandleTable::trivial(2)).unwrap();
        assert_eq!(canonical_form(&ext), canonical_form(&product), "{}", e.name);
    }
}
