//! Seifert fibred 3-manifolds over sphere bases: Seifert data and the Euler
//! number, the surgery data of torus knots and their connected sums, the
//! arithmetic conditions such a manifold must meet to arise from a knot, and
//! Alexander polynomials with a cyclotomic/square-free test.

mod cyclotomic;
mod poly;

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

pub use cyclotomic::{cyclotomic, cyclotomic_factorization, is_cyclotomic_squarefree, is_prime_u64, is_squarefree, CyclotomicReport};
pub use poly::LaurentPoly;

use crate::orbifold::{common_factor_triple, max_disjoint_common_factor_pairs, BaseOrbifold};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeifertError {
    #[error("need p > q >= 2 with gcd(p, q) = 1, got p = {p}, q = {q}")]
    InvalidTorusParameters { p: i64, q: i64 },
    #[error("invalid Seifert pair ({alpha},{beta}): need alpha >= 1 and gcd(alpha, beta) = 1")]
    InvalidPair { alpha: i64, beta: i64 },
    #[error("pair multiplicities {pairs:?} do not match cone orders {cones:?}")]
    MultiplicityMismatch { pairs: Vec<u64>, cones: Vec<u64> },
    #[error("Seifert data here needs a sphere base, got {0}")]
    NotSphereBase(String),
    #[error("cannot parse {0}")]
    Parse(String),
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
}

/// An exceptional fibre `(alpha, beta)`; `alpha = 1` marks a regular fibre
/// carrying part of the obstruction term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SeifertPair {
    pub alpha: u64,
    pub beta: i64,
}

impl SeifertPair {
    pub fn new(alpha: u64, beta: i64) -> Result<Self, SeifertError> {
        if alpha == 0 || alpha.gcd(&beta.unsigned_abs()) != 1 {
            return Err(SeifertError::InvalidPair { alpha: alpha as i64, beta });
        }
        Ok(SeifertPair { alpha, beta })
    }

    pub fn ratio(&self) -> Rational {
        Rational::new(self.beta, self.alpha as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeifertData {
    #[serde(serialize_with = "serialize_display")]
    base: BaseOrbifold,
    pairs: Vec<SeifertPair>,
}

fn serialize_display<T: fmt::Display, S: serde::Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

impl SeifertData {
    /// Pairs with `alpha >= 2` must match the cone orders as a multiset.
    pub fn new(base: BaseOrbifold, pairs: Vec<SeifertPair>) -> Result<Self, SeifertError> {
        let BaseOrbifold::Sphere { cone_orders } = &base else {
            return Err(SeifertError::NotSphereBase(base.to_string()));
        };
        for p in &pairs {
            SeifertPair::new(p.alpha, p.beta)?;
        }
        let mut a: Vec<u64> = pairs.iter().map(|p| p.alpha).filter(|&a| a >= 2).collect();
        let mut c = cone_orders.clone();
        a.sort_unstable();
        c.sort_unstable();
        if a != c {
            return Err(SeifertError::MultiplicityMismatch { pairs: a, cones: c });
        }
        Ok(SeifertData { base, pairs })
    }

    pub fn base(&self) -> &BaseOrbifold {
        &self.base
    }

    pub fn pairs(&self) -> &[SeifertPair] {
        &self.pairs
    }

    /// `(alpha_i, beta_i) -> (alpha_i, beta_i + k alpha_i)` balanced by an
    /// appended `(1, -k)`.
    pub fn shift_pair(&self, i: usize, k: i64) -> Self {
        let mut pairs = self.pairs.clone();
        pairs[i].beta += k * pairs[i].alpha as i64;
        pairs.push(SeifertPair { alpha: 1, beta: -k });
        SeifertData { base: self.base.clone(), pairs }
    }

    /// Unnormalized form: `0 < beta_i < alpha_i` for the exceptional fibres
    /// and a single obstruction pair `(1, b)` collecting the rest.
    pub fn normalized(&self) -> Self {
        let mut b = 0i64;
        let mut pairs: Vec<SeifertPair> = Vec::new();
        for p in &self.pairs {
            if p.alpha == 1 {
                b += p.beta;
                continue;
            }
            let a = p.alpha as i64;
            let (q, r) = p.beta.div_mod_floor(&a);
            b += q;
            pairs.push(SeifertPair { alpha: p.alpha, beta: r });
        }
        pairs.push(SeifertPair { alpha: 1, beta: b });
        SeifertData { base: self.base.clone(), pairs }
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ;", self.base)?;
        for p in &self.pairs {
            write!(f, " ({},{})", p.alpha, p.beta)?;
        }
        Ok(())
    }
}

/// `S2(a1,...,am) ; (a1,b1) ... (am,bm)`
impl FromStr for SeifertData {
    type Err = SeifertError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SeifertError::Parse(format!("Seifert data '{s}'"));
        let (b, rest) = s.split_once(';').ok_or_else(bad)?;
        let base: BaseOrbifold = b.trim().parse().map_err(|_| bad())?;
        let compact: String = rest.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pairs = Vec::new();
        let mut tail = compact.as_str();
        while !tail.is_empty() {
            let inner = tail.strip_prefix('(').ok_or_else(bad)?;
            let close = inner.find(')').ok_or_else(bad)?;
            let (a, b) = inner[..close].split_once(',').ok_or_else(bad)?;
            let alpha: u64 = a.parse().map_err(|_| bad())?;
            let beta: i64 = b.parse().map_err(|_| bad())?;
            pairs.push(SeifertPair::new(alpha, beta)?);
            tail = &inner[close + 1..];
        }
        SeifertData::new(base, pairs)
    }
}

/// `-sum beta_i / alpha_i`
pub fn euler_number(s: &SeifertData) -> Rational {
    -s.pairs.iter().map(SeifertPair::ratio).fold(Rational::zero(), |a, b| a + b)
}

fn check_torus(p: i64, q: i64) -> Result<(u64, u64), SeifertError> {
    if !(q >= 2 && p > q && p.gcd(&q) == 1) {
        return Err(SeifertError::InvalidTorusParameters { p, q });
    }
    Ok((p as u64, q as u64))
}

fn sorted_sphere(mut orders: Vec<u64>) -> BaseOrbifold {
    orders.sort_unstable();
    BaseOrbifold::Sphere { cone_orders: orders }
}

/// 0-surgery on the `(p, q)` torus knot: `{(p,q), (q,p), (pq, -p^2-q^2)}`
/// over `S2(q, p, pq)`.
pub fn torus_surgery_data(p: i64, q: i64) -> Result<SeifertData, SeifertError> {
    let (pu, qu) = check_torus(p, q)?;
    let pairs = vec![
        SeifertPair::new(pu, q)?,
        SeifertPair::new(qu, p)?,
        SeifertPair::new(pu * qu, -(p * p) - q * q)?,
    ];
    SeifertData::new(sorted_sphere(vec![qu, pu, pu * qu]), pairs)
}

/// 0-surgery on the connected sum of the `(p, q)` torus knot with its
/// reflection, over `S2(q, q, p, p)`, with pairs `(p,q), (q,p), (p,-q), (q,-p)`.
pub fn connected_sum_surgery_data(p: i64, q: i64) -> Result<SeifertData, SeifertError> {
    let (pu, qu) = check_torus(p, q)?;
    let pairs = vec![
        SeifertPair::new(pu, q)?,
        SeifertPair::new(qu, p)?,
        SeifertPair::new(pu, -q)?,
        SeifertPair::new(qu, -p)?,
    ];
    SeifertData::new(sorted_sphere(vec![qu, qu, pu, pu]), pairs)
}

/// `(t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))`
pub fn alexander_torus(p: i64, q: i64) -> Result<LaurentPoly<i64>, SeifertError> {
    let (pu, qu) = check_torus(p, q)?;
    let num = LaurentPoly::t_power_minus_one(pu * qu).mul(&LaurentPoly::t_power_minus_one(1));
    let den = LaurentPoly::t_power_minus_one(pu).mul(&LaurentPoly::t_power_minus_one(qu));
    Ok(num.exact_div(&den).expect("division is exact for coprime p, q"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotComputable,
    NotChecked,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub item: u8,
    pub condition: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem5Report {
    pub conditions: Vec<ConditionCheck>,
    #[serde(serialize_with = "crate::serde_rational")]
    pub euler_number: Rational,
    /// `sum 1/a_i` over the cone orders.
    #[serde(serialize_with = "crate::serde_rational")]
    pub reciprocal_sum: Rational,
    pub overall: bool,
}

impl Theorem5Report {
    pub fn status(&self, item: u8) -> Option<CheckStatus> {
        self.conditions.iter().find(|c| c.item == item).map(|c| c.status)
    }
}

fn status(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

/// Necessary conditions on a Seifert fibred 0-surgery manifold of a
/// classical knot: (1) sphere base, `m >= 3`, Euler number 0; (2) every cone
/// order shares a factor with another, no three share one, and at most two
/// disjoint pairs do; (3) `sum 1/a_i <= m - 2`; (4) fibredness, not
/// computable; (5) with an Alexander polynomial, square-free and cyclotomic.
pub fn theorem5_check(s: &SeifertData, alexander: Option<&LaurentPoly<i64>>) -> Theorem5Report {
    let a = s.base().cone_orders();
    let m = a.len();
    let eps = euler_number(s);
    let mut conditions = Vec::new();

    conditions.push(ConditionCheck {
        item: 1,
        condition: "sphere base with at least three cone points and Euler number 0".into(),
        status: status(m >= 3 && eps.is_zero()),
        detail: format!("m = {m}, euler = {}", crate::exact::format_rational(&eps)),
    });

    let isolated: Vec<u64> = (0..m)
        .filter(|&i| (0..m).all(|j| j == i || a[i].gcd(&a[j]) == 1))
        .map(|i| a[i])
        .collect();
    let triple = common_factor_triple(a);
    let pairs = max_disjoint_common_factor_pairs(a);
    let mut notes = Vec::new();
    if !isolated.is_empty() {
        notes.push(format!("coprime to all others: {isolated:?}"));
    }
    if let Some([i, j, k]) = triple {
        notes.push(format!("({}, {}, {}) share a factor", a[i], a[j], a[k]));
    }
    if pairs > 2 {
        notes.push(format!("{pairs} disjoint pairs share a factor"));
    }
    conditions.push(ConditionCheck {
        item: 2,
        condition: "each cone order shares a factor with another; no three share one; at most two disjoint pairs do"
            .into(),
        status: status(notes.is_empty()),
        detail: if notes.is_empty() { "holds".into() } else { notes.join("; ") },
    });

    let recip = a.iter().map(|&x| Rational::new(1, x as i64)).fold(Rational::zero(), |s, r| s + r);
    let bound = Rational::from_integer(m as i64 - 2);
    conditions.push(ConditionCheck {
        item: 3,
        condition: "sum of 1/a_i at most m - 2".into(),
        status: status(recip <= bound),
        detail: format!(
            "sum = {}, m - 2 = {}",
            crate::exact::format_rational(&recip),
            m as i64 - 2
        ),
    });

    conditions.push(ConditionCheck {
        item: 4,
        condition: "knot is fibred".into(),
        status: CheckStatus::NotComputable,
        detail: "not decidable from Seifert data".into(),
    });

    let (st5, detail5) = match alexander.map(is_cyclotomic_squarefree) {
        None => (CheckStatus::NotChecked, "no Alexander polynomial supplied".to_string()),
        Some(Err(e)) => (CheckStatus::Fail, e.to_string()),
        Some(Ok(r)) => (
            status(r.holds()),
            match &r.cyclotomic_factors {
                Some(ns) => format!("squarefree = {}, Phi_n for n in {ns:?}", r.squarefree),
                None => format!("squarefree = {}, not a product of cyclotomic polynomials", r.squarefree),
            },
        ),
    };
    conditions.push(ConditionCheck {
        item: 5,
        condition: "Alexander polynomial is a square-free product of cyclotomic polynomials".into(),
        status: st5,
        detail: detail5,
    });

    let overall = conditions.iter().all(|c| c.status != CheckStatus::Fail);
    Theorem5Report { conditions, euler_number: eps, reciprocal_sum: recip, overall }
}

impl Theorem5Report {
    pub fn conditions_1_to_3_pass(&self) -> bool {
        (1..=3).all(|i| self.status(i) == Some(CheckStatus::Pass))
    }
}

/// `Delta(1)`, which is `+-1` for a knot.
pub fn alexander_at_one(f: &LaurentPoly<i64>) -> i64 {
    f.coeffs().iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn euler_examples() {
        let s: SeifertData = "S2(2,3,6) ; (2,3) (3,2) (6,-13)".parse().unwrap();
        assert_eq!(euler_number(&s), q(0, 1));
        assert_eq!(euler_number(&"S2() ;".parse().unwrap()), q(0, 1));
        assert_eq!(euler_number(&"S2(2,2) ; (2,1) (2,1)".parse().unwrap()), q(-1, 1));
        assert_eq!(s.to_string(), "S2(2,3,6) ; (2,3) (3,2) (6,-13)");
    }

    #[test]
    fn data_validation() {
        assert!(matches!(
            "S2(2,3) ; (2,1) (5,1)".parse::<SeifertData>(),
            Err(SeifertError::MultiplicityMismatch { .. })
        ));
        assert!(matches!("S2(4) ; (4,2)".parse::<SeifertData>(), Err(SeifertError::InvalidPair { .. })));
        assert!(matches!("P2(2,3) ; (2,1) (3,1)".parse::<SeifertData>(), Err(SeifertError::NotSphereBase(_))));
        assert!("S2(3) ; (3,1) (1,-2)".parse::<SeifertData>().is_ok());
    }

    #[test]
    fn torus_data() {
        let s = torus_surgery_data(3, 2).unwrap();
        assert_eq!(s.to_string(), "S2(2,3,6) ; (3,2) (2,3) (6,-13)");
        let s5 = torus_surgery_data(5, 2).unwrap();
        assert_eq!(s5.base().to_string(), "S2(2,5,10)");
        assert!(euler_number(&s5).is_zero());
        assert!(torus_surgery_data(4, 2).is_err());
        assert!(torus_surgery_data(2, 3).is_err());
        let c = connected_sum_surgery_data(3, 2).unwrap();
        assert_eq!(c.base().to_string(), "S2(2,2,3,3)");
        assert!(euler_number(&c).is_zero());
        assert_eq!(connected_sum_surgery_data(5, 3).unwrap().base().to_string(), "S2(3,3,5,5)");
        assert!(connected_sum_surgery_data(6, 4).is_err());
    }

    #[test]
    fn normalization_keeps_euler_number() {
        let s = torus_surgery_data(7, 3).unwrap();
        let n = s.normalized();
        assert_eq!(euler_number(&n), euler_number(&s));
        assert!(n.pairs().iter().filter(|p| p.alpha > 1).all(|p| p.beta >= 0 && (p.beta as u64) < p.alpha));
        assert_eq!(euler_number(&s.shift_pair(2, -5)), euler_number(&s));
    }

    #[test]
    fn theorem5_examples() {
        let s = torus_surgery_data(3, 2).unwrap();
        let alex = alexander_torus(3, 2).unwrap();
        let r = theorem5_check(&s, Some(&alex));
        assert!(r.overall && r.conditions_1_to_3_pass());
        assert_eq!(r.reciprocal_sum, q(1, 1));
        assert_eq!(r.status(4), Some(CheckStatus::NotComputable));
        assert_eq!(r.status(5), Some(CheckStatus::Pass));

        let r = theorem5_check(&"S2(2,3,19) ; (2,1) (3,1) (19,1)".parse().unwrap(), None);
        assert_eq!(r.status(2), Some(CheckStatus::Fail));
        assert_eq!(r.status(5), Some(CheckStatus::NotChecked));
        let r = theorem5_check(&"S2(2,3) ; (2,1) (3,-1)".parse().unwrap(), None);
        assert_eq!(r.status(1), Some(CheckStatus::Fail));
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(alexander_torus(3, 2).unwrap().to_string(), "1 - t + t^2");
        assert_eq!(alexander_torus(5, 2).unwrap().to_string(), "1 - t + t^2 - t^3 + t^4");
        assert!(alexander_torus(4, 2).is_err());
        let a = alexander_torus(7, 4).unwrap();
        assert_eq!(a.span(), 18);
        assert!(a.is_palindromic());
        assert_eq!(alexander_at_one(&a), 1);
        assert_eq!(a.coeffs()[0], 1);
    }
}
