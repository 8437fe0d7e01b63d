use orbiweight::weight::{
    commuting_trace_angles, find_rst_bruteforce, find_rst_constructive, residue_chart, weight_certificate,
    QuasiPrimeTriple, ResidueData, RstWitness, Verdict, WordExponents,
};
use orbiweight::Rational;
use proptest::prelude::*;

/// Goodness with every ratio over the common denominator 2abc, so only
/// integer arithmetic is involved.
fn oracle_witness(abc: [i64; 3], def: [i64; 3]) -> Option<[i64; 3]> {
    let [a, b, c] = abc;
    let den = 2 * a * b * c;
    let psi_num = |n: i64| {
        let r = n.rem_euclid(den);
        r.min(den - r)
    };
    let gcd = |mut x: i64, mut y: i64| {
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x.abs()
    };
    for r in 1..a {
        for s in 1..b {
            for t in 1..c {
                if gcd(r, a) != 1 || gcd(s, b) != 1 || gcd(t, c) != 1 {
                    continue;
                }
                if r * b * c + s * a * c + t * a * b >= a * b * c {
                    continue;
                }
                let p = [psi_num(r * def[0] * b * c), psi_num(s * def[1] * a * c), psi_num(t * def[2] * a * b)];
                if 2 * p.iter().max().unwrap() < p.iter().sum::<i64>() {
                    return Some([r, s, t]);
                }
            }
        }
    }
    None
}

const ODD_PRIMES: [u64; 8] = [3, 5, 7, 11, 13, 17, 19, 23];

fn odd_prime_triple() -> impl Strategy<Value = QuasiPrimeTriple> {
    proptest::sample::subsequence(ODD_PRIMES.to_vec(), 3)
        .prop_shuffle()
        .prop_map(|v| QuasiPrimeTriple::new(v[0], v[1], v[2]).unwrap())
}

fn any_triple() -> impl Strategy<Value = QuasiPrimeTriple> {
    proptest::sample::subsequence(vec![3u64, 4, 5, 7, 11, 13], 3)
        .prop_shuffle()
        .prop_map(|v| QuasiPrimeTriple::new(v[0], v[1], v[2]).unwrap())
}

fn coprime_residues(t: QuasiPrimeTriple) -> impl Strategy<Value = (QuasiPrimeTriple, ResidueData)> {
    let pick = |m: u64| {
        let m = 2 * m as i64;
        (-3 * m..3 * m).prop_filter("coprime", move |r| num_integer::Integer::gcd(r, &m) == 1)
    };
    (pick(t.a), pick(t.b), pick(t.c)).prop_map(move |(d, e, f)| (t, ResidueData::new(d, e, f)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn bruteforce_matches_integer_oracle((t, res) in any_triple().prop_flat_map(coprime_residues)) {
        let got = find_rst_bruteforce(&t, &res).map(|w| w.as_array().map(|x| x as i64));
        let abc = t.as_array().map(|x| x as i64);
        prop_assert_eq!(got, oracle_witness(abc, res.as_array()));
    }

    #[test]
    fn constructive_succeeds_on_odd_primes((t, res) in odd_prime_triple().prop_flat_map(coprime_residues)) {
        let w = find_rst_constructive(&t, &res).unwrap();
        prop_assert!(w.validate(&t, &res).is_ok());
        prop_assert!(find_rst_bruteforce(&t, &res).is_some());
    }

    #[test]
    fn certificate_never_unobstructed_on_odd_primes(
        t in odd_prime_triple(),
        eu in -20i64..20, ex in -20i64..20, ey in -20i64..20, ez in -20i64..20,
    ) {
        let cert = weight_certificate(&t, WordExponents::new(eu, ex, ey, ez));
        prop_assert_eq!(cert.residues, ResidueData::new(eu + 2 * ex, eu + 2 * ey, eu + 2 * ez));
        prop_assert!(cert.verdict != Verdict::NotObstructed);
        if let Verdict::ObstructedByGoodTriple { witness } = cert.verdict {
            prop_assert!(witness.validate(&t, &cert.residues).is_ok());
        }
    }

    #[test]
    fn trace_angle_identity((t, res) in any_triple().prop_flat_map(coprime_residues)) {
        if let Some(w) = find_rst_bruteforce(&t, &res) {
            let ang = commuting_trace_angles(&w, &t, &res).unwrap();
            let x = Rational::new(w.r as i64 * res.d, 2 * t.a as i64);
            prop_assert_eq!(ang.alpha + ang.delta, x * 2);
            prop_assert_eq!(ang.beta + ang.gamma, x * 2);
        }
    }
}

#[test]
fn chart_of_345() {
    let t = QuasiPrimeTriple::new(3, 4, 5).unwrap();
    let chart = residue_chart(&t);
    assert_eq!(chart.len(), 2 * 4 * 4);
    for (res, w) in &chart {
        assert_eq!(w.map(|w| w.as_array().map(|x| x as i64)), oracle_witness([3, 4, 5], res.as_array()), "{res:?}");
    }
    let missing: Vec<[i64; 3]> = chart.iter().filter(|(_, w)| w.is_none()).map(|(r, _)| r.as_array()).collect();
    assert!(missing.contains(&[1, 1, 3]));
    assert!(missing.contains(&[1, 3, 1]));
}

#[test]
fn witness_validation_rejects_bad_triples() {
    let t = QuasiPrimeTriple::new(3, 5, 7).unwrap();
    let res = ResidueData::new(1, 1, 1);
    assert!(RstWitness::new(1, 1, 1).validate(&t, &res).is_ok());
    assert!(RstWitness::new(2, 4, 6).validate(&t, &res).is_err());
    assert!(RstWitness::new(0, 1, 1).validate(&t, &res).is_err());
}
