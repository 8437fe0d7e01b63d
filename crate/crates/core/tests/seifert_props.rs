use num_integer::Integer;
use orbiweight::orbifold::BaseOrbifold;
use orbiweight::seifert::{
    alexander_at_one, alexander_torus, connected_sum_surgery_data, cyclotomic, cyclotomic_factorization, euler_number,
    is_cyclotomic_squarefree, is_squarefree, theorem5_check, torus_surgery_data, CheckStatus,
    SeifertData, SeifertPair,
};
use orbiweight::{Poly, Rational};
use proptest::prelude::*;

fn mobius(n: u64) -> i32 {
    let (mut n, mut mu, mut p) = (n, 1, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        -mu
    } else {
        mu
    }
}

/// Dense coefficient vectors, constant term first.
fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Division by a monic polynomial; panics on a nonzero remainder.
fn poly_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    assert_eq!(b[db], 1);
    let mut q = vec![0; rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db];
        q[i] = c;
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= c * bj;
        }
    }
    assert!(rem.iter().all(|&c| c == 0));
    q
}

fn t_pow_minus_one(d: u64) -> Vec<i64> {
    let mut v = vec![0; d as usize + 1];
    v[0] = -1;
    v[d as usize] = 1;
    v
}

/// `Phi_n = prod_{d | n} (t^d - 1)^{mu(n/d)}`.
fn cyclotomic_oracle(n: u64) -> Vec<i64> {
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut num = vec![1];
    let mut den = vec![1];
    for &d in &divisors {
        match mobius(n / d) {
            1 => num = poly_mul(&num, &t_pow_minus_one(d)),
            -1 => den = poly_mul(&den, &t_pow_minus_one(d)),
            _ => {}
        }
    }
    poly_div_monic(&num, &den)
}

fn dense(p: &Poly) -> Vec<i64> {
    (p.low()..=p.high()).map(|k| p.coeff(k)).collect()
}

#[test]
fn cyclotomic_matches_mobius_product() {
    for n in 1..=90 {
        let c = cyclotomic(n);
        assert_eq!(c.low(), 0);
        assert_eq!(dense(&c), cyclotomic_oracle(n), "Phi_{n}");
    }
}

#[test]
fn torus_alexander_is_product_over_new_divisors() {
    for p in 2..=20u64 {
        for q in 2..p {
            if p.gcd(&q) != 1 {
                continue;
            }
            let expected_ns: Vec<u64> = (1..=p * q).filter(|n| (p * q) % n == 0 && p % n != 0 && q % n != 0).collect();
            let product = expected_ns.iter().fold(vec![1], |acc, &n| poly_mul(&acc, &cyclotomic_oracle(n)));
            let delta = alexander_torus(p as i64, q as i64).unwrap();
            assert_eq!(dense(&delta), product, "({p},{q})");
            assert_eq!(delta.high() - delta.low(), ((p - 1) * (q - 1)) as i64);
            assert_eq!(alexander_at_one(&delta).abs(), 1);
            let report = is_cyclotomic_squarefree(&delta).unwrap();
            assert!(report.squarefree);
            assert_eq!(report.cyclotomic_factors, Some(expected_ns));
        }
    }
}

#[test]
fn squarefree_detects_repeated_factors() {
    let phi6 = cyclotomic(6);
    assert!(is_squarefree(&phi6));
    assert!(!is_squarefree(&phi6.mul(&phi6)));
    let nonc: Poly = "1 - 3t + t^2".parse().unwrap();
    let (ns, rest) = cyclotomic_factorization(&nonc.mul(&cyclotomic(5)));
    assert_eq!(ns, vec![5]);
    assert_eq!(rest.normalized(), nonc.normalized());
    assert!(is_cyclotomic_squarefree(&Poly::zero()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn products_of_distinct_cyclotomics(ns in proptest::collection::btree_set(1u64..40, 1..5), shift in -5i64..5) {
        let f = ns.iter().fold(Poly::one(), |acc, &n| acc.mul(&cyclotomic(n))).shift(shift);
        let report = is_cyclotomic_squarefree(&f).unwrap();
        prop_assert!(report.squarefree);
        prop_assert_eq!(report.cyclotomic_factors, Some(ns.into_iter().collect::<Vec<_>>()));
    }

    #[test]
    fn euler_invariant_under_normalization_moves(
        pairs in proptest::collection::vec(
            (2u64..12, -30i64..30).prop_filter("coprime", |&(a, b)| (a as i64).gcd(&b) == 1),
            3..6,
        ),
        moves in proptest::collection::vec((0usize..6, -4i64..=4), 0..5),
    ) {
        let orders: Vec<u64> = pairs.iter().map(|p| p.0).collect();
        let base = BaseOrbifold::sphere(&orders).unwrap();
        let sp: Vec<SeifertPair> = pairs.iter().map(|&(a, b)| SeifertPair::new(a, b).unwrap()).collect();
        let s = SeifertData::new(base, sp).unwrap();
        // direct oracle: -sum beta/alpha
        let direct = pairs.iter().fold(Rational::from_integer(0), |acc, &(a, b)| acc - Rational::new(b, a as i64));
        prop_assert_eq!(euler_number(&s), direct);
        let mut moved = s.clone();
        for (i, k) in moves {
            moved = moved.shift_pair(i % pairs.len(), k);
        }
        prop_assert_eq!(euler_number(&moved), direct);
        prop_assert_eq!(euler_number(&moved.normalized()), direct);
        let text = moved.to_string();
        prop_assert_eq!(text.parse::<SeifertData>().unwrap(), moved);
    }

    #[test]
    fn connected_sums_have_zero_euler(p in 3i64..40, q in 2i64..40) {
        prop_assume!(q < p && p.gcd(&q) == 1);
        let s = connected_sum_surgery_data(p, q).unwrap();
        prop_assert_eq!(euler_number(&s), Rational::from_integer(0));
        let t = torus_surgery_data(p, q).unwrap();
        prop_assert_eq!(euler_number(&t), Rational::from_integer(0));
        prop_assert!(theorem5_check(&t, None).conditions_1_to_3_pass());
    }
}

#[test]
fn non_sphere_or_nonzero_euler_fails_first_condition() {
    let s: SeifertData = "S2(2,3,7) ; (2,1) (3,1) (7,1)".parse().unwrap();
    let r = theorem5_check(&s, None);
    assert_eq!(r.status(1), Some(CheckStatus::Fail));
    assert_eq!(r.status(4), Some(CheckStatus::NotComputable));
    assert_eq!(r.status(5), Some(CheckStatus::NotChecked));
}
