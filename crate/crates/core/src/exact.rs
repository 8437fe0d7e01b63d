//! Exact rational primitives: the nearest-integer distance `psi`, the
//! good-triple predicate and the pair of sign maps on `{+1, -1}` attached to
//! a good triple.
//!
//! Everything here is generic over the integer type backing the fractions
//! (`i64`, `i128`, `BigInt`, ...). No floating point is involved: goodness and
//! floor parities are discontinuous, so only exact arithmetic is meaningful.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

/// Integer types usable as the scalar of the exact engines.
pub trait ExactInt:
    Integer + Signed + Clone + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display
{
}

impl<T> ExactInt for T where
    T: Integer + Signed + Clone + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display
{
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

fn half<I: ExactInt>() -> Ratio<I> {
    Ratio::new(I::one(), I::one() + I::one())
}

/// Distance from `x` to the nearest integer; always in `[0, 1/2]`.
///
/// A fractional part of exactly `1/2` takes the first branch and yields `1/2`.
pub fn psi<I: ExactInt>(x: &Ratio<I>) -> Ratio<I> {
    let frac = x - x.floor();
    if frac <= half() {
        frac
    } else {
        Ratio::one() - frac
    }
}

/// `2 max(psi) < sum(psi)`, strictly.
pub fn is_good<I: ExactInt>(xi: &Ratio<I>, eta: &Ratio<I>, zeta: &Ratio<I>) -> bool {
    let (p, q, r) = (psi(xi), psi(eta), psi(zeta));
    let max = p.clone().max(q.clone()).max(r.clone());
    let two = Ratio::from_integer(I::one() + I::one());
    two * max < p + q + r
}

/// A triple of rationals known to be good.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodTriple<I: ExactInt = i64> {
    xi: Ratio<I>,
    eta: Ratio<I>,
    zeta: Ratio<I>,
}

impl<I: ExactInt> GoodTriple<I> {
    pub fn new(xi: Ratio<I>, eta: Ratio<I>, zeta: Ratio<I>) -> Option<Self> {
        is_good(&xi, &eta, &zeta).then_some(GoodTriple { xi, eta, zeta })
    }

    pub fn xi(&self) -> &Ratio<I> {
        &self.xi
    }

    pub fn eta(&self) -> &Ratio<I> {
        &self.eta
    }

    pub fn zeta(&self) -> &Ratio<I> {
        &self.zeta
    }

    pub fn sign_maps(&self) -> Result<(SignMap, SignMap), ExactError> {
        lemma1_maps(&self.xi, &self.eta, &self.zeta)
    }
}

/// An element of `S^0 = {+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Sign {
    pub const ALL: [Sign; 2] = [Sign::Plus, Sign::Minus];

    /// `(-1)^n`.
    pub fn from_parity<I: Integer>(n: &I) -> Sign {
        if n.is_even() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn index(self) -> usize {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// A self-map of `{+1, -1}` stored as its value table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SignMap {
    #[serde(rename = "at_plus")]
    plus: Sign,
    #[serde(rename = "at_minus")]
    minus: Sign,
}

impl SignMap {
    pub const IDENTITY: SignMap = SignMap::new(Sign::Plus, Sign::Minus);

    pub const fn new(at_plus: Sign, at_minus: Sign) -> Self {
        SignMap {
            plus: at_plus,
            minus: at_minus,
        }
    }

    pub fn constant(s: Sign) -> Self {
        SignMap::new(s, s)
    }

    pub fn from_fn(f: impl Fn(Sign) -> Sign) -> Self {
        SignMap::new(f(Sign::Plus), f(Sign::Minus))
    }

    pub fn apply(&self, eps: Sign) -> Sign {
        [self.plus, self.minus][eps.index()]
    }

    pub fn is_bijection(&self) -> bool {
        self.plus != self.minus
    }

    /// `eps -> s * self(eps)`.
    pub fn scaled(&self, s: Sign) -> Self {
        SignMap::new(s * self.plus, s * self.minus)
    }

    /// `eps -> self(-eps)`.
    pub fn precompose_negation(&self) -> Self {
        SignMap::new(self.minus, self.plus)
    }
}

impl fmt::Display for SignMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{+1 -> {}, -1 -> {}}}", self.plus, self.minus)
    }
}

/// `(-1)^floor(x)`.
pub fn floor_parity<I: ExactInt>(x: &Ratio<I>) -> Sign {
    Sign::from_parity(&x.floor().to_integer())
}

/// The maps `phi(eps) = (-1)^floor(xi + eta + eps*zeta)` and
/// `theta(eps) = (-1)^floor(xi - eta + eps*zeta)`.
///
/// Rejects inputs that are not good, that contain an integer, or for which one
/// of the signed sums `±xi ± eta ± zeta` is an integer. Under those hypotheses
/// `phi != theta` and at least one of them is a bijection.
pub fn lemma1_maps<I: ExactInt>(
    xi: &Ratio<I>,
    eta: &Ratio<I>,
    zeta: &Ratio<I>,
) -> Result<(SignMap, SignMap), ExactError> {
    if !is_good(xi, eta, zeta) {
        return Err(ExactError::PreconditionViolated(format!(
            "({xi}, {eta}, {zeta}) is not a good triple"
        )));
    }
    for (name, v) in [("xi", xi), ("eta", eta), ("zeta", zeta)] {
        if v.is_integer() {
            return Err(ExactError::PreconditionViolated(format!(
                "{name} = {v} is an integer"
            )));
        }
    }
    // Up to an overall sign there are four signed sums.
    let sums = [
        ("xi+eta+zeta", xi + eta + zeta),
        ("xi+eta-zeta", xi + eta - zeta),
        ("xi-eta+zeta", xi - eta + zeta),
        ("xi-eta-zeta", xi - eta - zeta),
    ];
    for (name, s) in &sums {
        if s.is_integer() {
            return Err(ExactError::PreconditionViolated(format!(
                "{name} = {s} is an integer"
            )));
        }
    }
    Ok(sign_maps_unchecked(xi, eta, zeta))
}

/// The floor-parity maps without any hypothesis checks.
pub fn sign_maps_unchecked<I: ExactInt>(
    xi: &Ratio<I>,
    eta: &Ratio<I>,
    zeta: &Ratio<I>,
) -> (SignMap, SignMap) {
    let phi = SignMap::new(
        floor_parity(&(xi + eta + zeta)),
        floor_parity(&(xi + eta - zeta)),
    );
    let theta = SignMap::new(
        floor_parity(&(xi - eta + zeta)),
        floor_parity(&(xi - eta - zeta)),
    );
    (phi, theta)
}

/// Parse `"p/q"`, `"-p/q"` or an integer.
pub fn parse_rational<I: ExactInt + std::str::FromStr>(s: &str) -> Option<Ratio<I>> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: I = n.trim().parse().ok()?;
            let d: I = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Ratio::new(n, d))
            }
        }
        None => s.parse().ok().map(Ratio::from_integer),
    }
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational<I: ExactInt>(x: &Ratio<I>) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&q(0, 1)), q(0, 1));
        assert_eq!(psi(&q(7, 10)), q(3, 10));
        assert_eq!(psi(&q(-5, 6)), q(1, 6));
        assert_eq!(psi(&q(1, 2)), q(1, 2));
        assert_eq!(psi(&q(-1, 2)), q(1, 2));
        assert_eq!(psi(&q(37, 4)), q(1, 4));
    }

    #[test]
    fn psi_over_bigint() {
        let x = Ratio::new(BigInt::from(-41), BigInt::from(12));
        assert_eq!(psi(&x), Ratio::new(BigInt::from(5), BigInt::from(12)));
    }

    #[test]
    fn goodness_examples() {
        assert!(is_good(&q(1, 6), &q(1, 6), &q(1, 6)));
        assert!(!is_good(&q(1, 2), &q(1, 4), &q(1, 8)));
        assert!(is_good(&q(1, 6), &q(1, 4), &q(1, 3)));
        // degenerate: equality is not good
        assert!(!is_good(&q(1, 4), &q(1, 8), &q(1, 8)));
        assert!(GoodTriple::new(q(1, 2), q(1, 4), q(1, 8)).is_none());
    }

    #[test]
    fn lemma1_example_maps() {
        let (phi, theta) = lemma1_maps(&q(1, 6), &q(1, 4), &q(1, 3)).unwrap();
        assert_eq!(theta, SignMap::IDENTITY);
        assert_eq!(phi, SignMap::constant(Sign::Plus));

        let (phi2, theta2) = lemma1_maps(&q(1, 6), &q(-1, 4), &q(1, 3)).unwrap();
        assert_eq!((phi2, theta2), (theta, phi));
    }

    #[test]
    fn lemma1_rejects_integral_sum() {
        // not good, so rejected before the sums are even looked at
        assert!(lemma1_maps(&q(1, 4), &q(1, 4), &q(1, 2)).is_err());
        let err = lemma1_maps(&q(1, 3), &q(1, 3), &q(1, 3)).unwrap_err();
        assert!(matches!(err, ExactError::PreconditionViolated(ref m) if m.contains("xi+eta+zeta")));
        let err = lemma1_maps(&q(1, 3), &q(2, 5), &q(11, 15)).unwrap_err();
        assert!(matches!(err, ExactError::PreconditionViolated(ref m) if m.contains("xi+eta-zeta")));
        assert!(lemma1_maps(&q(1, 1), &q(1, 4), &q(1, 3)).is_err());
        assert!(lemma1_maps(&q(1, 2), &q(1, 4), &q(1, 8)).is_err());
    }

    #[test]
    fn sign_map_ops() {
        let m = SignMap::new(Sign::Plus, Sign::Plus);
        assert!(!m.is_bijection());
        assert_eq!(m.scaled(Sign::Minus), SignMap::constant(Sign::Minus));
        assert_eq!(SignMap::IDENTITY.precompose_negation(), SignMap::IDENTITY.scaled(Sign::Minus));
        assert_eq!(SignMap::from_fn(|e| -e).apply(Sign::Plus), Sign::Minus);
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational::<i64>("-5/6"), Some(q(-5, 6)));
        assert_eq!(parse_rational::<i64>(" 3 "), Some(q(3, 1)));
        assert_eq!(parse_rational::<i64>("1/0"), None);
        assert_eq!(format_rational(&q(4, 2)), "2");
        assert_eq!(format_rational(&q(-3, 9)), "-1/3");
    }
}
