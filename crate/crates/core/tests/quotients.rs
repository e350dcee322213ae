//! Smith normal forms, quotient groups, characters and Cayley-graph operators.

mod common;

use building_zeta::cayley::build_graph;
use building_zeta::linalg::{mat_mul, transpose};
use building_zeta::quotient::{characters, quotient_group, smith_normal_form, Turn};
use building_zeta::LambdaElement;
use proptest::prelude::*;

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_diagonalizes(gamma in common::translation_subgroup(5, 200)) {
        let (u, d, v) = smith_normal_form(gamma.basis()).unwrap();
        prop_assert_eq!(mat_mul(&mat_mul(&u, gamma.basis()), &v), d.clone());
        let diag: Vec<i64> = (0..d.len()).map(|i| d[i][i]).collect();
        prop_assert_eq!(diag.iter().product::<i64>(), gamma.index());
        for w in diag.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        prop_assert_eq!(quotient_group(&gamma).order(), gamma.index());
    }

    #[test]
    fn characters_are_homomorphisms_with_unit_satake_product(gamma in common::translation_subgroup(4, 40)) {
        let q = quotient_group(&gamma);
        let n = gamma.rank();
        let a = LambdaElement::from_raw(&(0..n as i64).collect::<Vec<_>>());
        let b = LambdaElement::unit(n, n - 1).scale(3);
        let chars = characters(&q);
        prop_assert_eq!(chars.len() as i64, gamma.index());
        for chi in &chars {
            prop_assert_eq!(chi.eval(&a.add(&b), &q), chi.eval(&a, &q).add(&chi.eval(&b, &q)));
            let total = chi.satake(&q).iter().fold(Turn::zero(), |acc, t| acc.add(t));
            prop_assert!(total.is_zero());
            for g in gamma.generators() {
                prop_assert!(chi.eval(&g, &q).is_zero());
            }
        }
    }

    #[test]
    fn adjacency_operators(gamma in common::translation_subgroup(4, 40)) {
        let g = build_graph(&gamma).unwrap();
        let n = g.rank();
        let nv = g.num_vertices();
        let ops = g.typed_all();
        for i in 0..ops.len() {
            prop_assert_eq!(&transpose(&ops[i]), &ops[n - 2 - i]);
            for j in 0..i {
                prop_assert_eq!(mat_mul(&ops[i], &ops[j]), mat_mul(&ops[j], &ops[i]));
            }
            let want = binomial(n, i + 1);
            for r in 0..nv {
                prop_assert_eq!(ops[i][r].iter().sum::<i64>(), want);
                prop_assert_eq!(ops[i].iter().map(|row| row[r]).sum::<i64>(), want);
            }
        }
        // every translation of the quotient is an automorphism
        let q = g.group();
        for h in g.vertices() {
            let shift: Vec<usize> = g.vertices().iter().map(|v| q.index_of(&q.add(v, h))).collect();
            for a in ops {
                for w in 0..nv {
                    for v in 0..nv {
                        prop_assert_eq!(a[shift[w]][shift[v]], a[w][v]);
                    }
                }
            }
        }
        prop_assert_eq!(g.adjacency().iter().map(|r| r.iter().sum::<i64>()).max(), Some((1i64 << n) - 2));
    }
}

#[test]
fn panel_quotients() {
    for gamma in common::panel() {
        let g = build_graph(&gamma).unwrap();
        assert_eq!(g.num_vertices() as i64, gamma.index());
        assert_eq!(g.generators().len(), (1 << gamma.rank()) - 2);
    }
}
