//! Weight-two obstructions for `<u,x,y,z | u^2 = xyz, x^a = y^b = z^c = 1>`.
//!
//! A word `w` with exponent sums `E_u, E_x, E_y, E_z` is ruled out as a weight
//! element either by one of four divisibility conditions or by a triple
//! `(r, s, t)` with `r/a + s/b + t/c < 1` making `(rd/2a, se/2b, tf/2c)` good,
//! where `d = E_u + 2E_x`, `e = E_u + 2E_y`, `f = E_u + 2E_z`.
//!
//! Two independent searches for `(r, s, t)` live here: an exhaustive scan
//! ([`find_rst_bruteforce`]) and the explicit case analysis
//! ([`find_rst_constructive`]). The constructive path validates its own output.

use std::cmp::Ordering;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{floor_parity, is_good, psi, Sign, SignMap};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("{0} is not a quasi-prime (4 or an odd prime)")]
    NotQuasiPrime(u64),
    #[error("triple entries must be pairwise distinct: ({0}, {1}, {2})")]
    RepeatedEntry(u64, u64, u64),
    #[error("residue {residue} is not coprime to 2*{modulus}")]
    ResidueNotCoprime { residue: i64, modulus: u64 },
    #[error("the constructive search excludes the triple {{3,4,5}}")]
    ExcludedTriple,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("witness ({r}, {s}, {t}) is invalid: {reason}")]
    InvalidWitness { r: u64, s: u64, t: u64, reason: String },
}

/// `n = 4` or `n` an odd prime.
pub fn is_quasiprime(n: u64) -> bool {
    n == 4 || (n % 2 == 1 && is_prime(n))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Quasi-primes in `[1, max]`, ascending.
pub fn quasiprimes_up_to(max: u64) -> Vec<u64> {
    (1..=max).filter(|&n| is_quasiprime(n)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuasiPrimeTriple {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl QuasiPrimeTriple {
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self, WeightError> {
        for n in [a, b, c] {
            if !is_quasiprime(n) {
                return Err(WeightError::NotQuasiPrime(n));
            }
        }
        if a == b || b == c || a == c {
            return Err(WeightError::RepeatedEntry(a, b, c));
        }
        Ok(QuasiPrimeTriple { a, b, c })
    }

    pub fn as_array(&self) -> [u64; 3] {
        [self.a, self.b, self.c]
    }

    /// Whether `{a, b, c} = {3, 4, 5}`.
    pub fn is_345(&self) -> bool {
        let mut v = self.as_array();
        v.sort_unstable();
        v == [3, 4, 5]
    }
}

/// Residues `(d, e, f)`, meaningful relative to a [`QuasiPrimeTriple`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ResidueData {
    pub d: i64,
    pub e: i64,
    pub f: i64,
}

impl ResidueData {
    pub fn new(d: i64, e: i64, f: i64) -> Self {
        ResidueData { d, e, f }
    }

    pub fn as_array(&self) -> [i64; 3] {
        [self.d, self.e, self.f]
    }

    /// `gcd(d, 2a) = gcd(e, 2b) = gcd(f, 2c) = 1`.
    pub fn check_coprime(&self, t: &QuasiPrimeTriple) -> Result<(), WeightError> {
        for (residue, modulus) in self.as_array().into_iter().zip(t.as_array()) {
            if residue.gcd(&(2 * modulus as i64)) != 1 {
                return Err(WeightError::ResidueNotCoprime { residue, modulus });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RstWitness {
    pub r: u64,
    pub s: u64,
    pub t: u64,
}

impl RstWitness {
    pub fn new(r: u64, s: u64, t: u64) -> Self {
        RstWitness { r, s, t }
    }

    pub fn as_array(&self) -> [u64; 3] {
        [self.r, self.s, self.t]
    }

    /// The three coordinates `rd/2a, se/2b, tf/2c`.
    pub fn coordinates(&self, t: &QuasiPrimeTriple, res: &ResidueData) -> [Rational; 3] {
        let (mult, num, den) = (self.as_array(), res.as_array(), t.as_array());
        std::array::from_fn(|i| Ratio::new(mult[i] as i64 * num[i], 2 * den[i] as i64))
    }

    /// Checks positivity, coprimality, `r/a + s/b + t/c < 1` and goodness.
    pub fn validate(&self, t: &QuasiPrimeTriple, res: &ResidueData) -> Result<(), WeightError> {
        let fail = |reason: String| WeightError::InvalidWitness {
            r: self.r,
            s: self.s,
            t: self.t,
            reason,
        };
        let mut sum = Rational::zero();
        for (m, n) in self.as_array().into_iter().zip(t.as_array()) {
            if m == 0 {
                return Err(fail("entries must be positive".into()));
            }
            if m.gcd(&n) != 1 {
                return Err(fail(format!("{m} is not coprime to {n}")));
            }
            sum += Ratio::new(m as i64, n as i64);
        }
        if sum >= Rational::one() {
            return Err(fail(format!("r/a + s/b + t/c = {sum} is not < 1")));
        }
        let [x, y, z] = self.coordinates(t, res);
        if !is_good(&x, &y, &z) {
            return Err(fail(format!("({x}, {y}, {z}) is not good")));
        }
        Ok(())
    }
}

/// Exhaustive scan of `1 <= r < a, 1 <= s < b, 1 <= t < c` in lexicographic
/// order; returns the least valid witness.
pub fn find_rst_bruteforce(t: &QuasiPrimeTriple, res: &ResidueData) -> Option<RstWitness> {
    for r in 1..t.a {
        for s in 1..t.b {
            for u in 1..t.c {
                let w = RstWitness::new(r, s, u);
                if w.validate(t, res).is_ok() {
                    return Some(w);
                }
            }
        }
    }
    None
}

/// Every witness of the scan, in lexicographic order.
pub fn all_rst_witnesses(t: &QuasiPrimeTriple, res: &ResidueData) -> Vec<RstWitness> {
    let mut out = Vec::new();
    for r in 1..t.a {
        for s in 1..t.b {
            for u in 1..t.c {
                let w = RstWitness::new(r, s, u);
                if w.validate(t, res).is_ok() {
                    out.push(w);
                }
            }
        }
    }
    out
}

/// Which branch of the case analysis produced a constructive witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ConstructiveBranch {
    /// `(u, 1, 1)`.
    Direct,
    /// `e > 1`, `psi(2 gamma) < alpha`: `(1, 1, 2v)`.
    LargeResidueScaled,
    /// `e > 1`, `alpha < psi(2 gamma) < alpha + beta`: `(1, 1, 2)`.
    LargeResidueDoubled,
    /// `e = 1`, `psi(2 gamma) < alpha`: `(1, 1, 2x)`.
    UnitResidueScaled,
    /// `e = 1`, `alpha < psi(2 gamma) < beta`: `(y, 1, 2)`.
    UnitResidueMiddle,
    /// `e = 1`, `beta < psi(2 gamma)`: `(z, 1, 2)`.
    UnitResidueHigh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConstructiveOutcome {
    pub witness: RstWitness,
    pub branch: ConstructiveBranch,
}

/// Least integer `k` with `k * step + base > target`, for `step > 0`.
fn least_exceeding(step: &Rational, base: &Rational, target: &Rational) -> i64 {
    ((target - base) / step).floor().to_integer() + 1
}

/// Representative of `d mod 2m` in `(0, m)` up to sign.
fn fold_residue(d: i64, modulus: i64) -> i64 {
    let r = d.rem_euclid(2 * modulus);
    if r > modulus {
        2 * modulus - r
    } else {
        r
    }
}

/// The explicit construction of `(r, s, t)` by case analysis.
///
/// Residues are folded into `(0, modulus)` and the three ratios sorted
/// ascending; the branch's triple is then mapped back to the caller's
/// labelling and validated.
pub fn find_rst_constructive(
    t: &QuasiPrimeTriple,
    res: &ResidueData,
) -> Result<RstWitness, WeightError> {
    find_rst_constructive_traced(t, res).map(|o| o.witness)
}

pub fn find_rst_constructive_traced(
    t: &QuasiPrimeTriple,
    res: &ResidueData,
) -> Result<ConstructiveOutcome, WeightError> {
    if t.is_345() {
        return Err(WeightError::ExcludedTriple);
    }
    res.check_coprime(t)?;

    let moduli = t.as_array().map(|m| m as i64);
    let folded: [i64; 3] = [0, 1, 2].map(|i| fold_residue(res.as_array()[i], moduli[i]));
    let ratio = |i: usize| Ratio::new(folded[i], 2 * moduli[i]);

    // order[k] = original slot holding the k-th smallest ratio
    let mut order = [0usize, 1, 2];
    order.sort_by_key(|&i| ratio(i));
    for k in 0..2 {
        if ratio(order[k]).cmp(&ratio(order[k + 1])) == Ordering::Equal {
            return Err(WeightError::InternalInconsistency(format!(
                "ratios {} coincide",
                ratio(order[k])
            )));
        }
    }
    let (ia, ib, ic) = (order[0], order[1], order[2]);
    let (ma, mb, mc) = (moduli[ia], moduli[ib], moduli[ic]);
    let (alpha, beta, gamma) = (ratio(ia), ratio(ib), ratio(ic));
    let e_sorted = folded[ib];

    let inv = |m: i64| Ratio::new(1, m);
    let one = Rational::one();

    let u = least_exceeding(&alpha, &beta, &gamma);
    let (sorted, branch) = if Ratio::new(u, ma) + inv(mb) + inv(mc) < one {
        ([u, 1, 1], ConstructiveBranch::Direct)
    } else {
        let p = psi(&(gamma * 2));
        if e_sorted > 1 {
            if p < alpha {
                let v = least_exceeding(&p, &alpha, &beta);
                ([1, 1, 2 * v], ConstructiveBranch::LargeResidueScaled)
            } else if alpha < p && p < alpha + beta {
                ([1, 1, 2], ConstructiveBranch::LargeResidueDoubled)
            } else {
                return Err(WeightError::InternalInconsistency(format!(
                    "psi(2 gamma) = {p} outside the expected range for e > 1"
                )));
            }
        } else if p < alpha {
            let x = least_exceeding(&p, &alpha, &beta);
            ([1, 1, 2 * x], ConstructiveBranch::UnitResidueScaled)
        } else if alpha < p && p < beta {
            let y = least_exceeding(&alpha, &p, &beta);
            ([y, 1, 2], ConstructiveBranch::UnitResidueMiddle)
        } else if beta < p {
            let z = least_exceeding(&alpha, &beta, &p);
            ([z, 1, 2], ConstructiveBranch::UnitResidueHigh)
        } else {
            return Err(WeightError::InternalInconsistency(format!(
                "psi(2 gamma) = {p} coincides with a ratio"
            )));
        }
    };

    if sorted.iter().any(|&k| k <= 0) {
        return Err(WeightError::InternalInconsistency(format!(
            "non-positive multiplier in {sorted:?}"
        )));
    }
    let mut out = [0u64; 3];
    for (k, &slot) in order.iter().enumerate() {
        out[slot] = sorted[k] as u64;
    }
    let witness = RstWitness::new(out[0], out[1], out[2]);
    witness
        .validate(t, res)
        .map_err(|e| WeightError::InternalInconsistency(format!("constructed {e}")))?;
    Ok(ConstructiveOutcome { witness, branch })
}

/// Why a word is excluded as a weight element without any search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum KillReason {
    #[serde(rename = "a divides d")]
    ADividesD,
    #[serde(rename = "b divides e")]
    BDividesE,
    #[serde(rename = "c divides f")]
    CDividesF,
    #[serde(rename = "E_u even")]
    EuEven,
}

impl KillReason {
    pub fn describe(&self) -> &'static str {
        match self {
            KillReason::ADividesD => "a divides d: w lies in the normal closure of {y, z}",
            KillReason::BDividesE => "b divides e: w lies in the normal closure of {x, z}",
            KillReason::CDividesF => "c divides f: w lies in the normal closure of {x, y}",
            KillReason::EuEven => "E_u even: w lies in the normal closure of {x, y, z}",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    KilledByDivisibility { reasons: Vec<KillReason> },
    ObstructedByGoodTriple { witness: RstWitness },
    NotObstructed,
}

/// Exponent sums `(E_u, E_x, E_y, E_z)` of a word in `u, x, y, z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct WordExponents {
    pub eu: i64,
    pub ex: i64,
    pub ey: i64,
    pub ez: i64,
}

impl WordExponents {
    pub fn new(eu: i64, ex: i64, ey: i64, ez: i64) -> Self {
        WordExponents { eu, ex, ey, ez }
    }

    pub fn residues(&self) -> ResidueData {
        ResidueData::new(
            self.eu + 2 * self.ex,
            self.eu + 2 * self.ey,
            self.eu + 2 * self.ez,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightCertificate {
    pub triple: QuasiPrimeTriple,
    pub word_exponents: WordExponents,
    pub residues: ResidueData,
    pub verdict: Verdict,
    pub witness: Option<RstWitness>,
    pub angles: Option<TraceAngles>,
}

/// Decide whether the exponent data of a word rules it out as a weight element.
pub fn weight_certificate(t: &QuasiPrimeTriple, exps: WordExponents) -> WeightCertificate {
    let residues = exps.residues();
    let mut reasons = Vec::new();
    if residues.d % t.a as i64 == 0 {
        reasons.push(KillReason::ADividesD);
    }
    if residues.e % t.b as i64 == 0 {
        reasons.push(KillReason::BDividesE);
    }
    if residues.f % t.c as i64 == 0 {
        reasons.push(KillReason::CDividesF);
    }
    if exps.eu % 2 == 0 {
        reasons.push(KillReason::EuEven);
    }
    let witness = if !reasons.is_empty() {
        None
    } else if t.is_345() {
        find_rst_bruteforce(t, &residues)
    } else {
        match find_rst_constructive(t, &residues) {
            Ok(w) => Some(w),
            // The constructive path only fails on an internal bug; fall back to
            // the scan so the certificate still reflects the truth.
            Err(_) => find_rst_bruteforce(t, &residues),
        }
    };
    let verdict = match (reasons.is_empty(), witness) {
        (false, _) => Verdict::KilledByDivisibility { reasons },
        (true, Some(witness)) => Verdict::ObstructedByGoodTriple { witness },
        (true, None) => Verdict::NotObstructed,
    };
    let angles = witness.and_then(|w| commuting_trace_angles(&w, t, &residues).ok());
    WeightCertificate {
        triple: *t,
        word_exponents: exps,
        residues,
        verdict,
        witness,
        angles,
    }
}

/// Half-angles (in units of `pi`) of the commuting-case traces
/// `alpha = X + Y + Z`, `beta = X + Y - Z`, `gamma = X - Y + Z`,
/// `delta = X - Y - Z` for `X, Y, Z = rd/2a, se/2b, tf/2c`, together with the
/// floor-parity maps they induce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceAngles {
    #[serde(serialize_with = "crate::serde_rational")]
    pub alpha: Rational,
    #[serde(serialize_with = "crate::serde_rational")]
    pub beta: Rational,
    #[serde(serialize_with = "crate::serde_rational")]
    pub gamma: Rational,
    #[serde(serialize_with = "crate::serde_rational")]
    pub delta: Rational,
    /// `eps -> (-1)^floor(X + Y + eps Z)`: parities of `alpha`, `beta`.
    pub phi: SignMap,
    /// `eps -> (-1)^floor(X - Y + eps Z)`: parities of `gamma`, `delta`.
    pub theta: SignMap,
    /// `phi != theta`: the two commuting families lie in different classes.
    pub classes_differ: bool,
}

impl TraceAngles {
    pub fn from_coordinates(x: &Rational, y: &Rational, z: &Rational) -> Self {
        let alpha = x + y + z;
        let beta = x + y - z;
        let gamma = x - y + z;
        let delta = x - y - z;
        let phi = SignMap::new(floor_parity(&alpha), floor_parity(&beta));
        let theta = SignMap::new(floor_parity(&gamma), floor_parity(&delta));
        TraceAngles {
            alpha,
            beta,
            gamma,
            delta,
            phi,
            theta,
            classes_differ: phi != theta,
        }
    }

    pub fn parities(&self) -> [Sign; 4] {
        [
            self.phi.apply(Sign::Plus),
            self.phi.apply(Sign::Minus),
            self.theta.apply(Sign::Plus),
            self.theta.apply(Sign::Minus),
        ]
    }
}

pub fn commuting_trace_angles(
    w: &RstWitness,
    t: &QuasiPrimeTriple,
    res: &ResidueData,
) -> Result<TraceAngles, WeightError> {
    res.check_coprime(t)?;
    w.validate(t, res)?;
    let [x, y, z] = w.coordinates(t, res);
    Ok(TraceAngles::from_coordinates(&x, &y, &z))
}

/// One grid point of an exhaustive existence sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepCase {
    pub triple: QuasiPrimeTriple,
    pub residues: ResidueData,
    pub constructive: Result<RstWitness, String>,
    pub bruteforce: Option<RstWitness>,
}

impl SweepCase {
    pub fn agrees(&self) -> bool {
        match &self.constructive {
            Ok(w) => self.bruteforce.is_some() && w.validate(&self.triple, &self.residues).is_ok(),
            Err(_) => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub max_entry: u64,
    pub triples: usize,
    pub cases: usize,
    pub failures: Vec<SweepCase>,
}

/// Unordered distinct quasi-prime triples `a < b < c <= max`, excluding `{3,4,5}`.
pub fn sweep_triples(max: u64) -> Vec<QuasiPrimeTriple> {
    let qp = quasiprimes_up_to(max);
    let mut out = Vec::new();
    for (i, &a) in qp.iter().enumerate() {
        for (j, &b) in qp.iter().enumerate().skip(i + 1) {
            for &c in qp.iter().skip(j + 1) {
                let t = QuasiPrimeTriple { a, b, c };
                if !t.is_345() {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Residue classes mod `2a`, `2b`, `2c` coprime to the modulus, with
/// representatives in `[1, 2m)`.
pub fn coprime_residue_classes(t: &QuasiPrimeTriple) -> Vec<ResidueData> {
    let classes = |m: u64| -> Vec<i64> {
        (1..2 * m as i64)
            .filter(|r| r.gcd(&(2 * m as i64)) == 1)
            .collect()
    };
    let (ds, es, fs) = (classes(t.a), classes(t.b), classes(t.c));
    let mut out = Vec::with_capacity(ds.len() * es.len() * fs.len());
    for &d in &ds {
        for &e in &es {
            for &f in &fs {
                out.push(ResidueData::new(d, e, f));
            }
        }
    }
    out
}

fn sweep_case(t: QuasiPrimeTriple, residues: ResidueData) -> SweepCase {
    SweepCase {
        triple: t,
        residues,
        constructive: find_rst_constructive(&t, &residues).map_err(|e| e.to_string()),
        bruteforce: find_rst_bruteforce(&t, &residues),
    }
}

/// Constructive-versus-exhaustive agreement over every triple and residue
/// class with entries at most `max`. `parallel` partitions the grid by triple
/// across the rayon pool; results are merged in grid order either way.
pub fn lemma2_sweep(max: u64, parallel: bool) -> SweepReport {
    let triples = sweep_triples(max);
    let run_triple = |t: &QuasiPrimeTriple| -> (usize, Vec<SweepCase>) {
        let classes = coprime_residue_classes(t);
        let failures = classes
            .iter()
            .map(|r| sweep_case(*t, *r))
            .filter(|c| !c.agrees())
            .collect();
        (classes.len(), failures)
    };
    let per_triple: Vec<(usize, Vec<SweepCase>)> = if parallel {
        triples.par_iter().map(run_triple).collect()
    } else {
        triples.iter().map(run_triple).collect()
    };
    let mut cases = 0;
    let mut failures = Vec::new();
    for (n, f) in per_triple {
        cases += n;
        failures.extend(f);
    }
    SweepReport {
        max_entry: max,
        triples: triples.len(),
        cases,
        failures,
    }
}

/// Existence of witnesses for every residue class of a single triple; used to
/// chart `{3,4,5}`, for which no general statement is made.
pub fn residue_chart(t: &QuasiPrimeTriple) -> Vec<(ResidueData, Option<RstWitness>)> {
    coprime_residue_classes(t)
        .into_iter()
        .map(|r| (r, find_rst_bruteforce(t, &r)))
        .collect()
}
