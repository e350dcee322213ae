//! The positive-geodesic zeta by all routes, and the Bass formula.

mod common;

use building_zeta::cayley::build_graph;
use building_zeta::quotient::TranslationSubgroup;
use building_zeta::zeta::{
    enumerate_backtrackless_cycles, enumerate_positive_geodesics, euler_product_truncation, generator_orders,
    lfunction, verify_ihara, verify_theorems, zeta_positive_det, zeta_positive_orders, DEFAULT_TOLERANCE,
};
use building_zeta::{Error, IntPolynomial};
use proptest::prelude::*;

#[test]
fn panel_identities() {
    for gamma in common::panel() {
        let rep = verify_theorems(&gamma, 12, DEFAULT_TOLERANCE).unwrap();
        assert!(rep.verdicts.all(), "n={} N={}: {:?}", gamma.rank(), gamma.index(), rep.verdicts);
        assert!(rep.lfunction.max_deviation < 1e-6);
    }
}

#[test]
fn documented_examples() {
    let g2 = TranslationSubgroup::new(2, vec![vec![2]]).unwrap();
    let z = zeta_positive_det(&build_graph(&g2).unwrap()).unwrap();
    assert_eq!(z, IntPolynomial::one_minus_power(2).pow(2));
    let d33 = TranslationSubgroup::diagonal(3, &[3, 3]).unwrap();
    assert_eq!(zeta_positive_orders(&d33), IntPolynomial::one_minus_power(3).pow(9));
    assert_eq!(generator_orders(&d33), vec![3, 3, 3]);
}

#[test]
fn roots_lie_on_the_unit_circle() {
    // via the orders factorization every root is an mᵢ-th root of unity
    for gamma in common::panel() {
        let orders = generator_orders(&gamma);
        let rebuilt = orders.iter().fold(IntPolynomial::one(), |acc, &m| {
            &acc * &IntPolynomial::one_minus_power(m as usize).pow((gamma.index() / m) as usize)
        });
        assert_eq!(rebuilt, zeta_positive_orders(&gamma));
    }
}

#[test]
fn bass_formula_on_simple_quotients() {
    for nv in 4..=10 {
        // odd cycles are not type zero; the Bass formula concerns the graph alone
        let g = build_graph(&TranslationSubgroup::lattice(2, vec![vec![nv]]).unwrap()).unwrap();
        assert!(g.is_simple());
        let rep = verify_ihara(&g, 8).unwrap();
        assert_eq!(rep.bass.euler_characteristic, 0);
        assert!(rep.matches, "cycle {nv}");
    }
    let g = build_graph(&TranslationSubgroup::lattice(3, vec![vec![5, 0], vec![0, 5]]).unwrap()).unwrap();
    let rep = verify_ihara(&g, 8).unwrap();
    assert_eq!(rep.bass.euler_characteristic, 25 * (2 - 4));
    assert!(rep.matches);
    assert!(!rep.opposite_matches);
}

#[test]
fn multigraphs_are_rejected_by_the_cycle_oracle() {
    let g = build_graph(&TranslationSubgroup::new(2, vec![vec![2]]).unwrap()).unwrap();
    assert!(matches!(enumerate_backtrackless_cycles(&g, 4), Err(Error::Multigraph(2))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn random_groups_all_routes_agree(gamma in common::translation_subgroup(4, 30)) {
        let g = build_graph(&gamma).unwrap();
        let det = zeta_positive_det(&g).unwrap();
        prop_assert_eq!(&det, &zeta_positive_orders(&gamma));
        prop_assert_eq!(&lfunction(&gamma, 1e-6).unwrap().polynomial, &det);
        let lengths = enumerate_positive_geodesics(&g, 12).into_iter().map(|c| c.length);
        prop_assert_eq!(euler_product_truncation(lengths, 12), det.truncate(12));
    }
}
