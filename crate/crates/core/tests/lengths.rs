//! Length functions: conjugation invariance, integrality at the factorial
//! scale, face symmetry and the rational-geodesic pattern.

use building_zeta::selberg::{find_conjugator, rational_geodesic_pattern, real_canonical_form};
use building_zeta::{is_face, length_vector, AffineElement, LambdaElement, LengthScale, Permutation};
use proptest::prelude::*;

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::new(images).expect("a shuffle is a permutation"))
}

fn element(n: usize) -> impl Strategy<Value = AffineElement> {
    (prop::collection::vec(-20i64..=20, n), perm_strategy(n))
        .prop_map(|(v, p)| AffineElement::new(LambdaElement::from_raw(&v), p).expect("matching ranks"))
}

fn pair() -> impl Strategy<Value = (AffineElement, AffineElement)> {
    (2usize..=5).prop_flat_map(|n| (element(n), element(n)))
}

/// `h · x = w + q(x)`.
fn act(h: &AffineElement, x: &LambdaElement) -> LambdaElement {
    h.p.act_lambda(x).add(&h.v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn lengths_are_conjugation_invariant((g, h) in pair()) {
        let c = g.conjugate_by(&h);
        for scale in [LengthScale::Geodesic, LengthScale::Factorial] {
            prop_assert_eq!(length_vector(&g, scale), length_vector(&c, scale));
        }
    }

    #[test]
    fn factorial_lengths_are_integral((g, _) in pair()) {
        let l = length_vector(&g, LengthScale::Factorial);
        prop_assert!(l.is_integral(), "{} has lengths {}", g, l);
        prop_assert!(l.values.iter().all(|v| *v.numer() >= 0));
    }

    #[test]
    fn conjugators_are_found((g, h) in pair()) {
        let c = g.conjugate_by(&h);
        prop_assert_eq!(real_canonical_form(&g), real_canonical_form(&c));
        let found = find_conjugator(&g, &c);
        prop_assert!(found.is_some());
        prop_assert_eq!(g.conjugate_by(&found.unwrap()), c);
    }

    #[test]
    fn geodesic_pattern_is_conjugation_invariant((g, h) in pair()) {
        prop_assert_eq!(rational_geodesic_pattern(&g), rational_geodesic_pattern(&g.conjugate_by(&h)));
    }

    #[test]
    fn faces_are_preserved_by_g(
        (pts, h) in (2usize..=4).prop_flat_map(|n| {
            (prop::collection::vec(prop::collection::vec(-3i64..=3, n), 1..=n), element(n))
        })
    ) {
        let vs: Vec<LambdaElement> = pts.iter().map(|x| LambdaElement::from_raw(x)).collect();
        let moved: Vec<LambdaElement> = vs.iter().map(|x| act(&h, x)).collect();
        prop_assert_eq!(is_face(&vs).ok(), is_face(&moved).ok());
    }
}

#[test]
fn pattern_on_multiples_of_face_vectors() {
    for n in 2..=5usize {
        for j in 1..n {
            for k in 1..=4i64 {
                let raw: Vec<i64> = (0..n).map(|i| if i < j { k } else { 0 }).collect();
                let g = AffineElement::translation(LambdaElement::from_raw(&raw));
                assert_eq!(rational_geodesic_pattern(&g), Some(j), "n={n} j={j} k={k}");
            }
        }
        assert_eq!(rational_geodesic_pattern(&AffineElement::identity(n)), None);
    }
    let mixed = AffineElement::translation(LambdaElement::from_raw(&[2, 1, 0]));
    assert_eq!(rational_geodesic_pattern(&mixed), None);
}

#[test]
fn distinct_classes_have_no_conjugator() {
    let x = AffineElement::translation(LambdaElement::from_raw(&[2, 0, 0]));
    let y = AffineElement::translation(LambdaElement::from_raw(&[1, 1, 0]));
    assert_ne!(real_canonical_form(&x), real_canonical_form(&y));
    assert!(find_conjugator(&x, &y).is_none());
    // same real form, different p-orbit structure: a translation is never conjugate to a swap
    let s = AffineElement::new(LambdaElement::zero(3), Permutation::transposition(3, 0, 1)).unwrap();
    assert!(find_conjugator(&AffineElement::identity(3), &s).is_none());
}

#[test]
fn face_examples() {
    let lam = LambdaElement::from_raw;
    assert!(is_face(&[lam(&[0, 0, 0]), lam(&[1, 0, 0]), lam(&[1, 1, 0])]).unwrap());
    assert!(!is_face(&[lam(&[0, 0, 0]), lam(&[2, 0, 0])]).unwrap());
}
