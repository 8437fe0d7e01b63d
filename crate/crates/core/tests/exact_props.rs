use num_integer::Integer;
use orbiweight::exact::{is_good, lemma1_maps, psi, sign_maps_unchecked, GoodTriple, Sign};
use orbiweight::Rational;
use proptest::prelude::*;

/// Distance to the nearest integer from the integer representation alone.
fn psi_oracle(n: i64, d: i64) -> Rational {
    let r = n.rem_euclid(d);
    Rational::new(r.min(d - r), d)
}

#[test]
fn psi_matches_oracle_and_symmetries() {
    for d in 1..=24i64 {
        for n in -100..=100i64 {
            let x = Rational::new(n, d);
            let p = psi(&x);
            assert_eq!(p, psi_oracle(n, d), "psi({x})");
            assert_eq!(p, psi(&-x));
            for k in [-3i64, -1, 1, 7] {
                assert_eq!(p, psi(&(x + Rational::from_integer(k))));
            }
            assert!(p >= Rational::from_integer(0) && p <= Rational::new(1, 2));
        }
    }
}

fn nonint_rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 2i64..=12)
        .prop_map(|(n, d)| Rational::new(n, d))
        .prop_filter("not an integer", |x| !x.is_integer())
}

fn lemma1_input() -> impl Strategy<Value = [Rational; 3]> {
    (nonint_rational(), nonint_rational(), nonint_rational())
        .prop_filter("preconditions", |(a, b, c)| lemma1_maps(a, b, c).is_ok())
        .prop_map(|(a, b, c)| [a, b, c])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn integer_shift_scales_both_maps(x in lemma1_input(), n in -5i64..=5, slot in 0usize..3) {
        let (phi, theta) = lemma1_maps(&x[0], &x[1], &x[2]).unwrap();
        let mut y = x;
        y[slot] += Rational::from_integer(n);
        let (phi2, theta2) = lemma1_maps(&y[0], &y[1], &y[2]).unwrap();
        let s = Sign::from_parity(&n);
        prop_assert_eq!(phi2, phi.scaled(s));
        prop_assert_eq!(theta2, theta.scaled(s));
    }

    #[test]
    fn negating_eta_swaps_maps(x in lemma1_input()) {
        let (phi, theta) = lemma1_maps(&x[0], &x[1], &x[2]).unwrap();
        let (phi2, theta2) = lemma1_maps(&x[0], &-x[1], &x[2]).unwrap();
        prop_assert_eq!(phi2, theta);
        prop_assert_eq!(theta2, phi);
    }

    #[test]
    fn negating_zeta_precomposes(x in lemma1_input()) {
        let (phi, theta) = lemma1_maps(&x[0], &x[1], &x[2]).unwrap();
        let (phi2, theta2) = lemma1_maps(&x[0], &x[1], &-x[2]).unwrap();
        prop_assert_eq!(phi2, phi.precompose_negation());
        prop_assert_eq!(theta2, theta.precompose_negation());
    }

    #[test]
    fn negating_all_postcomposes(x in lemma1_input()) {
        let (phi, theta) = lemma1_maps(&x[0], &x[1], &x[2]).unwrap();
        let (phi2, theta2) = lemma1_maps(&-x[0], &-x[1], &-x[2]).unwrap();
        prop_assert_eq!(phi2, phi.scaled(Sign::Minus));
        prop_assert_eq!(theta2, theta.scaled(Sign::Minus));
    }

    #[test]
    fn conclusion_holds(x in lemma1_input()) {
        let (phi, theta) = lemma1_maps(&x[0], &x[1], &x[2]).unwrap();
        prop_assert_ne!(phi, theta);
        prop_assert!(phi.is_bijection() || theta.is_bijection());
    }

    #[test]
    fn good_is_psi_inequality(x in nonint_rational(), y in nonint_rational(), z in nonint_rational()) {
        let p = [psi(&x), psi(&y), psi(&z)];
        let max = p.iter().max().unwrap();
        let expected = *max * 2 < p[0] + p[1] + p[2];
        prop_assert_eq!(is_good(&x, &y, &z), expected);
        prop_assert_eq!(GoodTriple::new(x, y, z).is_some(), expected);
    }
}

#[test]
fn maps_follow_floor_parity_definition() {
    // phi(eps) = (-1)^floor(xi + eta + eps zeta), evaluated with integer floors
    let floor_sign = |n: i64, d: i64| Sign::from_parity(&Integer::div_floor(&n, &d));
    let (x, y, z) = (Rational::new(1, 3), Rational::new(2, 5), Rational::new(2, 7));
    let (phi, theta) = sign_maps_unchecked(&x, &y, &z);
    // common denominator 105: 35, 42, 30
    assert_eq!(phi.apply(Sign::Plus), floor_sign(35 + 42 + 30, 105));
    assert_eq!(phi.apply(Sign::Minus), floor_sign(35 + 42 - 30, 105));
    assert_eq!(theta.apply(Sign::Plus), floor_sign(35 - 42 + 30, 105));
    assert_eq!(theta.apply(Sign::Minus), floor_sign(35 - 42 - 30, 105));
}
