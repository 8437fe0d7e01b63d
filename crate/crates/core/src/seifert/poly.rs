use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::SeifertError;
use crate::exact::ExactInt;

/// A Laurent polynomial `sum c_k t^k` with finitely many nonzero terms.
/// Stored as the lowest exponent plus a dense coefficient vector whose first
/// and last entries are nonzero; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<I = i64> {
    low: i64,
    coeffs: Vec<I>,
}

impl<I: ExactInt> LaurentPoly<I> {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(I::one(), 0)
    }

    pub fn monomial(c: I, k: i64) -> Self {
        Self::from_coeffs(k, vec![c])
    }

    /// `t^k - 1`
    pub fn t_power_minus_one(k: u64) -> Self {
        let mut c = vec![I::zero(); k as usize + 1];
        c[0] = -I::one();
        c[k as usize] = I::one();
        Self::from_coeffs(0, c)
    }

    /// Coefficients of `t^low, t^(low+1), ...`.
    pub fn from_coeffs(low: i64, coeffs: Vec<I>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// Span `high - low`, the degree once the lowest power of `t` is factored out.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: i64) -> I {
        if k < self.low || k > self.high() {
            I::zero()
        } else {
            self.coeffs[(k - self.low) as usize].clone()
        }
    }

    pub fn coeffs(&self) -> &[I] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&I> {
        self.coeffs.last()
    }

    /// `self / t^low`, an ordinary polynomial with nonzero constant term.
    pub fn normalized(&self) -> Self {
        LaurentPoly { low: 0, coeffs: self.coeffs.clone() }
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn eval(&self, t: &I) -> Option<I> {
        if self.low < 0 {
            return None;
        }
        let mut acc = I::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t.clone() + c.clone();
        }
        let mut p = I::one();
        for _ in 0..self.low {
            p = p * t.clone();
        }
        Some(acc * p)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let coeffs = (low..=high).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::from_coeffs(low, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![I::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(self.low + other.low, c)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.clone() * I::from_i64(self.low + i as i64).expect("exponent fits"))
            .collect();
        Self::from_coeffs(self.low - 1, coeffs)
    }

    /// Exact quotient in `Z[t, t^-1]`, or `None` if `divisor` does not divide.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.coeffs.len();
        let m = divisor.coeffs.len();
        if n < m {
            return None;
        }
        let lead = divisor.coeffs[m - 1].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![I::zero(); n - m + 1];
        for i in (0..=n - m).rev() {
            let top = rem[i + m - 1].clone();
            if top.is_zero() {
                continue;
            }
            if !top.is_multiple_of(&lead) {
                return None;
            }
            let q = top / lead.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - q.clone() * d.clone();
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(self.low - divisor.low, quot))
    }

    /// Same coefficients read backwards; palindromic polynomials are fixed.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        LaurentPoly { low: self.low, coeffs: c }
    }

    pub fn is_palindromic(&self) -> bool {
        self.reversed() == *self
    }

    pub fn map_coeffs<J: ExactInt, F: Fn(&I) -> J>(&self, f: F) -> LaurentPoly<J> {
        LaurentPoly::from_coeffs(self.low, self.coeffs.iter().map(f).collect())
    }
}

impl<I: ExactInt> fmt::Display for LaurentPoly<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.low + i as i64;
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("t")?,
                1 => write!(f, "{mag}t")?,
                _ if unit => write!(f, "t^{k}")?,
                _ => write!(f, "{mag}t^{k}")?,
            }
        }
        Ok(())
    }
}

impl<I: ExactInt> Serialize for LaurentPoly<I> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Sums of terms `c`, `c t`, `c*t^k`, `t^-k` in any order, e.g. `1 - t + t^2`.
impl<I: ExactInt + FromStr> FromStr for LaurentPoly<I> {
    type Err = SeifertError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SeifertError::Parse(format!("polynomial '{s}'"));
        let text: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(bad());
        }
        // split into signed terms; a sign right after '^' belongs to the exponent
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (i, &c) in text.iter().enumerate() {
            if (c == '+' || c == '-') && i > 0 && text[i - 1] != '^' {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(c);
        }
        terms.push(cur);
        let mut p = Self::zero();
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term.strip_prefix('+').unwrap_or(&term)),
            };
            let (coef_txt, power) = match body.find('t') {
                None => (body, None),
                Some(pos) => {
                    let rest = &body[pos + 1..];
                    let k = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse::<i64>().map_err(|_| bad())?
                    };
                    (body[..pos].strip_suffix('*').unwrap_or(&body[..pos]), Some(k))
                }
            };
            let c: I = match (coef_txt.is_empty(), power) {
                (true, Some(_)) => I::one(),
                (true, None) => return Err(bad()),
                (false, _) => coef_txt.parse().map_err(|_| bad())?,
            };
            let c = if neg { -c } else { c };
            p = p.add(&Self::monomial(c, power.unwrap_or(0)));
        }
        Ok(p)
    }
}
