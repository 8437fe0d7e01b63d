use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

use super::{LaurentPoly, SeifertError};
use crate::exact::ExactInt;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn reduce_mod<I: ExactInt>(c: &I, p: u64) -> u64 {
    let m = I::from_u64(p).expect("modulus fits");
    c.mod_floor(&m).to_u64().expect("residue fits")
}

/// A prime `P = 1 (mod n)` above 2^31 together with an element of exact
/// order `n` in `F_P`.
fn root_of_unity(n: u64) -> (u64, u64) {
    static CACHE: OnceLock<Mutex<HashMap<u64, (u64, u64)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(&hit) = cache.lock().unwrap().get(&n) {
        return hit;
    }
    let mut p = ((1u64 << 31) / n + 1) * n + 1;
    while !is_prime_u64(p) {
        p += n;
    }
    let factors = prime_factors(n);
    let omega = (2..)
        .map(|g| pow_mod(g, (p - 1) / n, p))
        .find(|&w| factors.iter().all(|&r| pow_mod(w, n / r, p) != 1))
        .expect("F_P^* is cyclic");
    cache.lock().unwrap().insert(n, (p, omega));
    (p, omega)
}

fn eval_mod<I: ExactInt>(f: &LaurentPoly<I>, x: u64, p: u64) -> u64 {
    f.coeffs().iter().rev().fold(0, |acc, c| (mul_mod(acc, x, p) + reduce_mod(c, p)) % p)
}

/// `n`-th cyclotomic polynomial, using `Phi_{mp}(t) = Phi_m(t^p) / Phi_m(t)`
/// for primes `p` not dividing `m` and `Phi_n(t) = Phi_rad(n)(t^(n/rad(n)))`.
pub fn cyclotomic(n: u64) -> LaurentPoly<i64> {
    assert!(n >= 1, "cyclotomic index must be positive");
    let primes = prime_factors(n);
    let mut phi = LaurentPoly::from_coeffs(0, vec![-1, 1]);
    let mut m = 1u64;
    for &p in &primes {
        let stretched = stretch(&phi, p);
        phi = stretched.exact_div(&phi).expect("cyclotomic recursion is exact");
        m *= p;
    }
    stretch(&phi, n / m)
}

/// `f(t^k)`
fn stretch<I: ExactInt>(f: &LaurentPoly<I>, k: u64) -> LaurentPoly<I> {
    if k == 1 || f.is_zero() {
        return f.clone();
    }
    let k = k as usize;
    let mut c = vec![I::zero(); (f.coeffs().len() - 1) * k + 1];
    for (i, x) in f.coeffs().iter().enumerate() {
        c[i * k] = x.clone();
    }
    LaurentPoly::from_coeffs(f.low() * k as i64, c)
}

/// Euler's totient for `1..=n`.
fn totients(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for i in 2..=n {
        if phi[i] == i as u64 {
            for j in (i..=n).step_by(i) {
                phi[j] -= phi[j] / i as u64;
            }
        }
    }
    phi
}

fn gcd_degree_mod(a: &[u64], b: &[u64], p: u64) -> usize {
    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let q = mul_mod(*a.last().unwrap(), inv, p);
            let off = a.len() - b.len();
            for (j, &bj) in b.iter().enumerate() {
                a[off + j] = (a[off + j] + p - mul_mod(q, bj, p)) % p;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn gcd_degree_rational(a: &[BigInt], b: &[BigInt]) -> usize {
    type Q = Ratio<BigInt>;
    fn trim(v: &mut Vec<Q>) {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
    }
    let mut a: Vec<Q> = a.iter().cloned().map(Q::from_integer).collect();
    let mut b: Vec<Q> = b.iter().cloned().map(Q::from_integer).collect();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lead = b.last().unwrap().clone();
        while a.len() >= b.len() {
            let q = a.last().unwrap() / &lead;
            let off = a.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                a[off + j] = &a[off + j] - &q * bj;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Whether `f` has no repeated irreducible factor other than powers of `t`.
pub fn is_squarefree<I: ExactInt>(f: &LaurentPoly<I>) -> bool {
    let g = f.normalized();
    if g.span() == 0 {
        return true;
    }
    let dg = g.derivative();
    let lead = g.leading().expect("nonzero").clone();
    // a repeated factor survives reduction mod any prime not dividing the
    // leading coefficient, so a coprime pair mod P settles it
    for p in [2_147_483_647u64, 1_000_000_007, 998_244_353] {
        if reduce_mod(&lead, p) == 0 {
            continue;
        }
        let a: Vec<u64> = g.coeffs().iter().map(|c| reduce_mod(c, p)).collect();
        let b: Vec<u64> = (0..g.span() as i64).map(|k| reduce_mod(&dg.coeff(k), p)).collect();
        if gcd_degree_mod(&a, &b, p) == 0 {
            return true;
        }
    }
    let to_big = |c: &I| BigInt::parse_bytes(c.to_string().as_bytes(), 10).expect("integer text");
    let a: Vec<BigInt> = g.coeffs().iter().map(to_big).collect();
    let b: Vec<BigInt> = (0..g.span() as i64).map(|k| to_big(&dg.coeff(k))).collect();
    gcd_degree_rational(&a, &b) == 0
}

/// Cyclotomic part of `f`: the indices `n` (with multiplicity) of the
/// `Phi_n` dividing `f`, and the cofactor after removing them and the power
/// of `t`. Only `n` with `phi(n) <= span(f)` can occur.
pub fn cyclotomic_factorization<I: ExactInt>(f: &LaurentPoly<I>) -> (Vec<u64>, LaurentPoly<I>) {
    let mut rest = f.normalized();
    let d = rest.span();
    let mut found = Vec::new();
    if d == 0 {
        return (found, rest);
    }
    // phi(n) >= sqrt(n) for n > 6
    let bound = (d * d).max(6);
    let phi = totients(bound);
    for n in 1..=bound as u64 {
        if phi[n as usize] as usize > rest.span() {
            continue;
        }
        let (p, omega) = root_of_unity(n);
        if eval_mod(&rest, omega, p) != 0 {
            continue;
        }
        let cyc = cyclotomic(n).map_coeffs(|c| I::from_i64(*c).expect("coefficient fits"));
        while let Some(q) = rest.exact_div(&cyc) {
            found.push(n);
            rest = q;
        }
        if rest.span() == 0 {
            break;
        }
    }
    (found, rest)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclotomicReport {
    pub squarefree: bool,
    /// Present iff `f` is a unit times a power of `t` times distinct `Phi_n`.
    pub cyclotomic_factors: Option<Vec<u64>>,
}

impl CyclotomicReport {
    pub fn holds(&self) -> bool {
        self.squarefree && self.cyclotomic_factors.is_some()
    }
}

pub fn is_cyclotomic_squarefree<I: ExactInt>(f: &LaurentPoly<I>) -> Result<CyclotomicReport, SeifertError> {
    if f.is_zero() {
        return Err(SeifertError::ZeroPolynomial);
    }
    let squarefree = is_squarefree(f);
    let (factors, rest) = cyclotomic_factorization(f);
    let unit = rest.span() == 0 && rest.coeffs()[0].abs().is_one();
    let distinct = factors.windows(2).all(|w| w[0] != w[1]);
    Ok(CyclotomicReport { squarefree, cyclotomic_factors: (unit && distinct).then_some(factors) })
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = LaurentPoly<i64>;

    fn p(s: &str) -> P {
        s.parse().unwrap()
    }

    #[test]
    fn cyclotomic_table() {
        assert_eq!(cyclotomic(1).to_string(), "-1 + t");
        assert_eq!(cyclotomic(6).to_string(), "1 - t + t^2");
        assert_eq!(cyclotomic(12).to_string(), "1 - t^2 + t^4");
        assert_eq!(cyclotomic(9).to_string(), "1 + t^3 + t^6");
        // first index with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic(105).coeffs().contains(&-2));
        // t^n - 1 is the product of Phi_d over d | n
        for n in 1..=40u64 {
            let prod = (1..=n).filter(|d| n % d == 0).fold(P::one(), |acc, d| acc.mul(&cyclotomic(d)));
            assert_eq!(prod, P::t_power_minus_one(n));
        }
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..50).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime_u64(2_147_483_647));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn reports() {
        let r = is_cyclotomic_squarefree(&p("t^2 - t + 1")).unwrap();
        assert_eq!(r, CyclotomicReport { squarefree: true, cyclotomic_factors: Some(vec![6]) });
        assert!(is_cyclotomic_squarefree(&p("t - 1")).unwrap().holds());
        let sq = p("1 - 2t + t^2");
        assert!(!is_squarefree(&sq));
        assert_eq!(is_cyclotomic_squarefree(&sq).unwrap().cyclotomic_factors, None);
        let r = is_cyclotomic_squarefree(&p("t^2 + t + 2")).unwrap();
        assert_eq!(r, CyclotomicReport { squarefree: true, cyclotomic_factors: None });
        let shifted = p("t^-3 - t^-2 + t^-1").neg();
        assert!(is_cyclotomic_squarefree(&shifted).unwrap().holds());
        assert!(is_cyclotomic_squarefree(&P::zero()).is_err());
        assert!(!is_squarefree(&p("2t^3 - 6t^2 + 6t - 2").mul(&p("t + 5"))));
        assert!(is_squarefree(&p("2t^2 - 3")));
    }
}
