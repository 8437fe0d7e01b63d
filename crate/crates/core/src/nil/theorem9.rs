use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::NilError;
use crate::group::{abelianization, Presentation, Word};
use crate::orbifold::{classify_base, BaseOrbifold};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Theorem9Case {
    S2,
    P2,
    Disk,
}

/// Exponent data for a torsion-free `Z^2`-extension of an orbifold group:
/// cone orders with `(e_i, f_i)`, corner orders with `(g_j, h_j)` (disk
/// only), and the twist `(k, l)` of the product relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem9Instance {
    pub case: Theorem9Case,
    pub orders: Vec<u64>,
    pub corner_orders: Vec<u64>,
    pub e: Vec<i64>,
    pub f: Vec<i64>,
    pub g: Vec<i64>,
    pub h: Vec<i64>,
    pub k: i64,
    pub l: i64,
}

impl Theorem9Instance {
    pub fn sphere(orders: &[u64], e: &[i64], f: &[i64], k: i64, l: i64) -> Self {
        Theorem9Instance {
            case: Theorem9Case::S2,
            orders: orders.to_vec(),
            corner_orders: Vec::new(),
            e: e.to_vec(),
            f: f.to_vec(),
            g: Vec::new(),
            h: Vec::new(),
            k,
            l,
        }
    }

    pub fn projective(orders: &[u64], e: &[i64], f: &[i64], k: i64, l: i64) -> Self {
        Theorem9Instance { case: Theorem9Case::P2, ..Self::sphere(orders, e, f, k, l) }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn disk(cones: &[u64], e: &[i64], f: &[i64], corners: &[u64], g: &[i64], h: &[i64], k: i64, l: i64) -> Self {
        Theorem9Instance {
            case: Theorem9Case::Disk,
            orders: cones.to_vec(),
            corner_orders: corners.to_vec(),
            e: e.to_vec(),
            f: f.to_vec(),
            g: g.to_vec(),
            h: h.to_vec(),
            k,
            l,
        }
    }

    pub fn validate(&self) -> Result<(), NilError> {
        let bad = |m: String| Err(NilError::MalformedInstance(m));
        if self.orders.iter().chain(&self.corner_orders).any(|&a| a < 2) {
            return bad("orders must be at least 2".into());
        }
        if self.e.len() != self.orders.len() || self.f.len() != self.orders.len() {
            return bad("need one (e_i, f_i) per cone order".into());
        }
        if self.g.len() != self.corner_orders.len() || self.h.len() != self.corner_orders.len() {
            return bad("need one (g_j, h_j) per corner order".into());
        }
        match self.case {
            Theorem9Case::S2 | Theorem9Case::P2 => {
                if self.orders.is_empty() {
                    return bad("need at least one cone order".into());
                }
                if !self.corner_orders.is_empty() {
                    return bad("corner orders only occur on disk bases".into());
                }
            }
            Theorem9Case::Disk => {
                if self.orders.is_empty() && self.corner_orders.is_empty() {
                    return bad("need at least one cone or corner order".into());
                }
                if self.k != 0 {
                    return bad(format!("k must be 0 on a disk base (x_(q+1)^2 = x_1^2), got {}", self.k));
                }
            }
        }
        Ok(())
    }
}

fn commutator(a: usize, b: usize) -> Word {
    Word::commutator(&Word::generator(a), &Word::generator(b))
}

fn yz_power(y: usize, z: usize, a: i64, b: i64) -> Word {
    Word::from_syllables([(y, a), (z, b)])
}

fn numbered(prefix: &str, n: usize) -> impl Iterator<Item = String> + '_ {
    (1..=n).map(move |i| format!("{prefix}{i}"))
}

/// The group of the extension. Sphere: `x_i^{a_i} = y^{e_i} z^{f_i}`, `x_i`
/// commute with `y, z`, `x_1...x_m = y^k z^l`, `[y, z]`. Projective plane:
/// `u^2 = x_1...x_m y^k z^l`, the same cone relations, `u y u^-1 = z`.
/// Disk: `w_i^{c_i} = y^{e_i} z^{f_i}`, `x_j^2 = y`, `x_j z x_j^-1 = z^-1`,
/// `(x_j x_{j+1})^{d_j} = y^{g_j} z^{h_j}`, `x_{q+1} W = W x_1 z^l` with
/// `W = w_1...w_p`.
pub fn build_theorem9_presentation(inst: &Theorem9Instance) -> Result<Presentation, NilError> {
    inst.validate()?;
    let m = inst.orders.len();
    let mut names: Vec<String> = Vec::new();
    let mut rels = Vec::new();
    match inst.case {
        Theorem9Case::S2 | Theorem9Case::P2 => {
            let off = usize::from(inst.case == Theorem9Case::P2);
            if off == 1 {
                names.push("u".into());
            }
            names.extend(numbered("x", m));
            let (y, z) = (off + m, off + m + 1);
            names.extend(["y".to_string(), "z".to_string()]);
            let xs = Word::from_syllables((off..off + m).map(|i| (i, 1)));
            if inst.case == Theorem9Case::P2 {
                let rhs = xs.mul(&yz_power(y, z, inst.k, inst.l));
                rels.push(Word::power_of(0, 2).equate(&rhs));
            }
            for i in 0..m {
                let xi = Word::power_of(off + i, inst.orders[i] as i64);
                rels.push(xi.equate(&yz_power(y, z, inst.e[i], inst.f[i])));
            }
            for i in 0..m {
                rels.push(commutator(off + i, y));
                rels.push(commutator(off + i, z));
            }
            match inst.case {
                Theorem9Case::S2 => rels.push(xs.equate(&yz_power(y, z, inst.k, inst.l))),
                _ => rels.push(Word::from_syllables([(0, 1), (y, 1), (0, -1), (z, -1)])),
            }
            rels.push(commutator(y, z));
        }
        Theorem9Case::Disk => {
            let (p, q) = (m, inst.corner_orders.len());
            names.extend(numbered("w", p));
            names.extend(numbered("x", q + 1));
            names.extend(["y".to_string(), "z".to_string()]);
            let x = |j: usize| p + j;
            let (y, z) = (p + q + 1, p + q + 2);
            for i in 0..p {
                let wi = Word::power_of(i, inst.orders[i] as i64);
                rels.push(wi.equate(&yz_power(y, z, inst.e[i], inst.f[i])));
                rels.push(commutator(i, y));
                rels.push(commutator(i, z));
            }
            for j in 0..=q {
                rels.push(Word::power_of(x(j), 2).equate(&Word::generator(y)));
                rels.push(Word::from_syllables([(x(j), 1), (z, 1), (x(j), -1), (z, 1)]));
            }
            for j in 0..q {
                let pair = Word::from_syllables([(x(j), 1), (x(j + 1), 1)]).pow(inst.corner_orders[j] as i64);
                rels.push(pair.equate(&yz_power(y, z, inst.g[j], inst.h[j])));
            }
            let w = Word::from_syllables((0..p).map(|i| (i, 1)));
            let lhs = Word::generator(x(q)).mul(&w);
            let rhs = w.mul(&Word::generator(x(0))).mul(&yz_power(y, z, inst.k, inst.l));
            rels.push(lhs.equate(&rhs));
            rels.push(commutator(y, z));
        }
    }
    Ok(Presentation::new(names, rels).expect("generated names are valid"))
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn prod_except(a: &[u64], skip: &[usize]) -> BigInt {
    a.iter()
        .enumerate()
        .filter(|(i, _)| !skip.contains(i))
        .fold(BigInt::one(), |p, (_, &x)| p * BigInt::from(x))
}

/// The `m + 2` maximal minors of the exponent matrix of the sphere
/// presentation, obtained by deleting the `y`, `z` and each `x_i` column.
pub fn sphere_minors(inst: &Theorem9Instance) -> Vec<BigInt> {
    let a = &inst.orders;
    let m = a.len();
    let all = prod_except(a, &[]);
    let my = big(inst.k) * &all - (0..m).map(|i| big(inst.e[i]) * prod_except(a, &[i])).sum::<BigInt>();
    let mz = big(inst.l) * &all - (0..m).map(|i| big(inst.f[i]) * prod_except(a, &[i])).sum::<BigInt>();
    let mut out = vec![my, mz];
    for i in 0..m {
        let head = (big(inst.k) * inst.f[i] - big(inst.l) * inst.e[i]) * prod_except(a, &[i]);
        let tail: BigInt = (0..m)
            .filter(|&j| j != i)
            .map(|j| (big(inst.e[i]) * inst.f[j] - big(inst.e[j]) * inst.f[i]) * prod_except(a, &[i, j]))
            .sum();
        out.push(head + tail);
    }
    out
}

fn gcd_all(xs: &[BigInt]) -> BigInt {
    xs.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reading {
    pub name: String,
    pub predicted: bool,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem9Check {
    pub case: Theorem9Case,
    /// Closed-form prediction that the abelianization is `Z`.
    pub predicted: bool,
    /// Smith normal form of the emitted presentation.
    pub oracle: bool,
    pub agree: bool,
    /// Alternative readings of the closed form, each compared to the oracle.
    pub readings: Vec<Reading>,
    /// `gcd(a_i, e_i, f_i) = 1` for every cone point.
    pub torsion_gate: bool,
}

pub fn check_theorem9_conditions(inst: &Theorem9Instance) -> Result<Theorem9Check, NilError> {
    let pres = build_theorem9_presentation(inst)?;
    let oracle = abelianization(&pres).is_infinite_cyclic();
    let m = inst.orders.len();
    let torsion_gate = (0..m).all(|i| {
        (inst.orders[i] as i64).gcd(&inst.e[i]).gcd(&inst.f[i]) == 1
    });
    let mut readings = Vec::new();
    let predicted = match inst.case {
        Theorem9Case::S2 => {
            let minors = sphere_minors(inst);
            let corrected = gcd_all(&minors).is_one();
            // the x_i minors scaled by the full product of the orders
            let scaled: Vec<BigInt> = minors
                .iter()
                .enumerate()
                .map(|(idx, v)| if idx < 2 { v.clone() } else { v * BigInt::from(inst.orders[idx - 2]) })
                .collect();
            readings.push(Reading {
                name: "x_i minors scaled by every a_j".into(),
                predicted: gcd_all(&scaled).is_one(),
                agrees: gcd_all(&scaled).is_one() == oracle,
            });
            corrected
        }
        Theorem9Case::P2 => {
            let sums: Vec<i64> = (0..m).map(|i| inst.e[i] + inst.f[i]).collect();
            let coprime = (0..m).all(|i| (inst.orders[i] as i64).gcd(&sums[i]) == 1);
            let even = inst.orders.iter().any(|b| b % 2 == 0);
            let total = inst.k + inst.l + sums.iter().sum::<i64>();
            coprime && (even || total.is_odd())
        }
        Theorem9Case::Disk => {
            let q = inst.corner_orders.len();
            let g_ok = (0..q).all(|j| inst.g[j] == inst.corner_orders[j] as i64);
            let h_ok = (0..q).all(|j| (inst.corner_orders[j] as i64).gcd(&inst.h[j]).gcd(&2) == 1);
            let e_ok = (0..q).all(|j| inst.e.get(j) == Some(&(inst.corner_orders[j] as i64)));
            let literal = g_ok && e_ok && h_ok;
            let amended = g_ok && h_ok;
            readings.push(Reading {
                name: "g_j = d_j, e_j = d_j, (2, d_j, h_j) = 1".into(),
                predicted: literal,
                agrees: literal == oracle,
            });
            readings.push(Reading {
                name: "g_j = d_j, (2, d_j, h_j) = 1".into(),
                predicted: amended,
                agrees: amended == oracle,
            });
            literal
        }
    };
    Ok(Theorem9Check { case: inst.case, predicted, oracle, agree: predicted == oracle, readings, torsion_gate })
}

fn random_admissible<R: Rng>(rng: &mut R, make: impl Fn(Vec<u64>) -> BaseOrbifold, sizes: &[usize], max_order: u64) -> Vec<u64> {
    loop {
        let m = sizes[rng.gen_range(0..sizes.len())];
        let orders: Vec<u64> = (0..m).map(|_| rng.gen_range(2..=max_order)).collect();
        if classify_base(&make(orders.clone())).admissible {
            return orders;
        }
    }
}

fn exps<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()
}

/// Random instances over admissible bases with orders `<= max_order` and
/// exponents in `[-bound, bound]`.
pub fn random_instance<R: Rng>(rng: &mut R, case: Theorem9Case, max_order: u64, bound: i64) -> Theorem9Instance {
    match case {
        Theorem9Case::S2 => {
            let a = random_admissible(rng, |o| BaseOrbifold::Sphere { cone_orders: o }, &[3, 4], max_order);
            let (e, f) = (exps(rng, a.len(), bound), exps(rng, a.len(), bound));
            Theorem9Instance::sphere(&a, &e, &f, rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
        }
        Theorem9Case::P2 => {
            let b = random_admissible(rng, |o| BaseOrbifold::Projective { cone_orders: o }, &[2, 3], max_order);
            let (e, f) = (exps(rng, b.len(), bound), exps(rng, b.len(), bound));
            Theorem9Instance::projective(&b, &e, &f, rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
        }
        Theorem9Case::Disk => {
            let (c, d) = loop {
                let p = rng.gen_range(0..=2usize);
                let q = rng.gen_range(0..=3usize);
                let c: Vec<u64> = (0..p).map(|_| rng.gen_range(2..=max_order)).collect();
                let d: Vec<u64> = (0..q).map(|_| rng.gen_range(2..=max_order)).collect();
                if classify_base(&BaseOrbifold::Disk { cone_orders: c.clone(), corner_orders: d.clone() }).admissible {
                    break (c, d);
                }
            };
            let (e, f) = (exps(rng, c.len(), bound), exps(rng, c.len(), bound));
            // bias g_j towards d_j so both readings see positive cases
            let g: Vec<i64> = d
                .iter()
                .map(|&dj| if rng.gen_bool(0.5) { dj as i64 } else { rng.gen_range(-bound..=bound) })
                .collect();
            let h = exps(rng, d.len(), bound);
            Theorem9Instance::disk(&c, &e, &f, &d, &g, &h, 0, rng.gen_range(-bound..=bound))
        }
    }
}

/// Two-by-two tally of a closed-form reading against the Smith oracle.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Confusion {
    pub both_true: usize,
    pub predicted_only: usize,
    pub oracle_only: usize,
    pub both_false: usize,
}

impl Confusion {
    fn record(&mut self, predicted: bool, oracle: bool) {
        match (predicted, oracle) {
            (true, true) => self.both_true += 1,
            (true, false) => self.predicted_only += 1,
            (false, true) => self.oracle_only += 1,
            (false, false) => self.both_false += 1,
        }
    }

    pub fn disagreements(&self) -> usize {
        self.predicted_only + self.oracle_only
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReadingTally {
    pub name: String,
    pub counts: Confusion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub instance: Theorem9Instance,
    pub check: Theorem9Check,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem9Sweep {
    pub case: Theorem9Case,
    pub instances: usize,
    pub agreements: usize,
    /// The primary prediction first, then each alternative reading.
    pub tallies: Vec<ReadingTally>,
    /// Instances where the primary prediction and the oracle differ.
    pub disagreements: Vec<Disagreement>,
}

/// Draws `count` instances from `rng` in sequence, checks them in parallel
/// and tallies in draw order, so the result depends only on the RNG state.
pub fn theorem9_sweep<R: Rng>(
    rng: &mut R,
    case: Theorem9Case,
    count: usize,
    max_order: u64,
    bound: i64,
) -> Result<Theorem9Sweep, NilError> {
    let instances: Vec<Theorem9Instance> = (0..count).map(|_| random_instance(rng, case, max_order, bound)).collect();
    let checks = instances
        .par_iter()
        .map(check_theorem9_conditions)
        .collect::<Result<Vec<_>, _>>()?;
    let mut tallies = vec![ReadingTally { name: "primary".into(), counts: Confusion::default() }];
    let mut disagreements = Vec::new();
    for (inst, check) in instances.into_iter().zip(checks) {
        tallies[0].counts.record(check.predicted, check.oracle);
        for (i, r) in check.readings.iter().enumerate() {
            if tallies.len() <= i + 1 {
                tallies.push(ReadingTally { name: r.name.clone(), counts: Confusion::default() });
            }
            tallies[i + 1].counts.record(r.predicted, check.oracle);
        }
        if !check.agree {
            disagreements.push(Disagreement { instance: inst, check });
        }
    }
    Ok(Theorem9Sweep {
        case,
        instances: count,
        agreements: count - disagreements.len(),
        tallies,
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sphere_example() {
        let inst = Theorem9Instance::sphere(&[2], &[1], &[0], 1, 1);
        let p = build_theorem9_presentation(&inst).unwrap();
        assert_eq!(p.names(), &["x1", "y", "z"]);
        assert!(abelianization(&p).is_infinite_cyclic());
        assert_eq!(sphere_minors(&inst), vec![BigInt::from(1), BigInt::from(2), BigInt::from(-1)]);
        let c = check_theorem9_conditions(&inst).unwrap();
        assert!(c.predicted && c.oracle && c.agree);
    }

    #[test]
    fn sphere_all_even() {
        let inst = Theorem9Instance::sphere(&[3, 5, 7], &[2, 0, -4], &[2, 2, 6], 4, -2);
        let c = check_theorem9_conditions(&inst).unwrap();
        assert!(!c.predicted && !c.oracle);
    }

    #[test]
    fn projective_presentation() {
        let inst = Theorem9Instance::projective(&[2, 3], &[1, 0], &[0, 1], 0, 0);
        let p = build_theorem9_presentation(&inst).unwrap();
        assert!(p.relators().contains(&p.parse_word("u y u^-1 z^-1").unwrap()));
        assert!(p.relators().contains(&p.parse_word("u^2 x2^-1 x1^-1").unwrap()));
    }

    #[test]
    fn disk_rejects_k() {
        let inst = Theorem9Instance::disk(&[3], &[1], &[0], &[3], &[3], &[1], 1, 0);
        assert!(matches!(build_theorem9_presentation(&inst), Err(NilError::MalformedInstance(_))));
        let ok = Theorem9Instance { k: 0, ..inst };
        let p = build_theorem9_presentation(&ok).unwrap();
        assert_eq!(p.names(), &["w1", "x1", "x2", "y", "z"]);
    }

    #[test]
    fn malformed() {
        let inst = Theorem9Instance::sphere(&[2, 3], &[1], &[0, 0], 0, 0);
        assert!(check_theorem9_conditions(&inst).is_err());
        assert!(Theorem9Instance::sphere(&[], &[], &[], 0, 0).validate().is_err());
    }

    #[test]
    fn small_sweep_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for case in [Theorem9Case::S2, Theorem9Case::P2] {
            for _ in 0..100 {
                let inst = random_instance(&mut rng, case, 9, 9);
                let c = check_theorem9_conditions(&inst).unwrap();
                assert!(c.agree, "{inst:?}");
            }
        }
    }

    #[test]
    fn sweep_is_reproducible() {
        let run = |seed| theorem9_sweep(&mut ChaCha8Rng::seed_from_u64(seed), Theorem9Case::Disk, 60, 6, 4).unwrap();
        let (a, b) = (run(3), run(3));
        assert_eq!(a, b);
        assert_eq!(a.tallies.len(), 3);
        for t in &a.tallies {
            let c = &t.counts;
            assert_eq!(c.both_true + c.both_false + c.disagreements(), 60);
        }
        assert_eq!(a.agreements + a.disagreements.len(), 60);
    }
}
