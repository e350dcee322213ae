//! Shared generators for the integration tests.

#![allow(dead_code)]

use building_zeta::quotient::TranslationSubgroup;
use proptest::prelude::*;

/// Type-zero translation subgroups with `2 ≤ n ≤ max_n` and index at most `max_index`.
pub fn translation_subgroup(max_n: usize, max_index: i64) -> impl Strategy<Value = TranslationSubgroup> {
    (2usize..=max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(-4i64..=4, n - 1), n - 1)))
        .prop_filter_map("singular, too large, or not type zero", move |(n, mut cols)| {
            // make every column type zero by adjusting its first entry
            for c in cols.iter_mut() {
                let s: i64 = c.iter().sum();
                c[0] -= s.rem_euclid(n as i64);
            }
            let k = n - 1;
            let basis: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| cols[j][i]).collect()).collect();
            let g = TranslationSubgroup::new(n, basis).ok()?;
            (g.index() <= max_index).then_some(g)
        })
}

/// The panel used across the integration tests.
pub fn panel() -> Vec<TranslationSubgroup> {
    let t = |n: usize, b: Vec<Vec<i64>>| TranslationSubgroup::new(n, b).unwrap();
    vec![
        t(2, vec![vec![2]]),
        t(2, vec![vec![4]]),
        t(2, vec![vec![6]]),
        t(2, vec![vec![10]]),
        t(2, vec![vec![16]]),
        t(3, vec![vec![1, 0], vec![-1, 3]]),
        t(3, vec![vec![3, 0], vec![0, 3]]),
        t(3, vec![vec![3, 0], vec![0, 6]]),
        t(3, vec![vec![3, 0], vec![0, 9]]),
        t(4, vec![vec![1, 0, 0], vec![-1, 1, 0], vec![0, -1, 4]]),
        t(4, vec![vec![1, 0, 0], vec![-1, 1, 0], vec![0, -1, 8]]),
        t(4, vec![vec![2, 0, 0], vec![2, 2, 0], vec![0, 2, 4]]),
    ]
}
