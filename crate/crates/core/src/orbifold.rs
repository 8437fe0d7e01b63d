//! Aspherical 2-orbifold bases: the sphere, projective-plane and disk
//! families, the necessary conditions for their orbifold groups to have
//! weight 1, and the standard presentations of those groups.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::group::{Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbifoldError {
    #[error("cannot parse base orbifold '{0}'")]
    Parse(String),
    #[error("orbifold orders must be at least 2, got {0}")]
    OrderTooSmall(u64),
}

/// `S2(a_1,...,a_m)`, `P2(b_1,...,b_m)` or `D(c_1,...,c_p; d_1,...,d_q)`,
/// the last with cone orders `c_i` and corner reflector orders `d_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum BaseOrbifold {
    Sphere { cone_orders: Vec<u64> },
    Projective { cone_orders: Vec<u64> },
    Disk { cone_orders: Vec<u64>, corner_orders: Vec<u64> },
}

impl BaseOrbifold {
    pub fn sphere(orders: &[u64]) -> Result<Self, OrbifoldError> {
        check_orders(orders)?;
        Ok(BaseOrbifold::Sphere { cone_orders: orders.to_vec() })
    }

    pub fn projective(orders: &[u64]) -> Result<Self, OrbifoldError> {
        check_orders(orders)?;
        Ok(BaseOrbifold::Projective { cone_orders: orders.to_vec() })
    }

    pub fn disk(cones: &[u64], corners: &[u64]) -> Result<Self, OrbifoldError> {
        check_orders(cones)?;
        check_orders(corners)?;
        Ok(BaseOrbifold::Disk { cone_orders: cones.to_vec(), corner_orders: corners.to_vec() })
    }

    pub fn cone_orders(&self) -> &[u64] {
        match self {
            BaseOrbifold::Sphere { cone_orders }
            | BaseOrbifold::Projective { cone_orders }
            | BaseOrbifold::Disk { cone_orders, .. } => cone_orders,
        }
    }

    pub fn corner_orders(&self) -> &[u64] {
        match self {
            BaseOrbifold::Disk { corner_orders, .. } => corner_orders,
            _ => &[],
        }
    }
}

fn check_orders(orders: &[u64]) -> Result<(), OrbifoldError> {
    match orders.iter().find(|&&a| a < 2) {
        Some(&a) => Err(OrbifoldError::OrderTooSmall(a)),
        None => Ok(()),
    }
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for BaseOrbifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseOrbifold::Sphere { cone_orders } => write!(f, "S2({})", join(cone_orders)),
            BaseOrbifold::Projective { cone_orders } => write!(f, "P2({})", join(cone_orders)),
            BaseOrbifold::Disk { cone_orders, corner_orders } => {
                write!(f, "D({};{})", join(cone_orders), join(corner_orders))
            }
        }
    }
}

fn parse_list(s: &str, whole: &str) -> Result<Vec<u64>, OrbifoldError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| OrbifoldError::Parse(whole.to_string())))
        .collect()
}

/// `S2(2,3,6)`, `P2(3,4,5)`, `D(3;3,3,3)`, `D(;2,3,5)`. Whitespace is
/// ignored; the disk form needs the `;` even when one list is empty.
impl FromStr for BaseOrbifold {
    type Err = OrbifoldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || OrbifoldError::Parse(s.to_string());
        let open = t.find('(').ok_or_else(bad)?;
        let inner = t[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        match &t[..open] {
            "S2" => BaseOrbifold::sphere(&parse_list(inner, s)?),
            "P2" => BaseOrbifold::projective(&parse_list(inner, s)?),
            "D" => {
                let (c, d) = inner.split_once(';').ok_or_else(bad)?;
                BaseOrbifold::disk(&parse_list(c, s)?, &parse_list(d, s)?)
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    S2,
    P2,
    #[serde(rename = "P2_345")]
    P2Exceptional,
    Disk,
    Rejected,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::S2 => "S2",
            CaseTag::P2 => "P2",
            CaseTag::P2Exceptional => "P2_345",
            CaseTag::Disk => "Disk",
            CaseTag::Rejected => "Rejected",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionOutcome {
    pub condition: String,
    pub passed: bool,
    pub detail: String,
}

impl ConditionOutcome {
    fn new(condition: &str, passed: bool, detail: impl Into<String>) -> Self {
        ConditionOutcome { condition: condition.to_string(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityVerdict {
    pub admissible: bool,
    pub case_tag: CaseTag,
    pub reasons: Vec<ConditionOutcome>,
    /// Set when the conditions hold but weight 1 is not known to be attained.
    pub open_status: Option<String>,
}

impl AdmissibilityVerdict {
    pub fn failed(&self) -> impl Iterator<Item = &ConditionOutcome> {
        self.reasons.iter().filter(|r| !r.passed)
    }
}

/// Largest number of pairwise disjoint pairs `{i, j}` with `gcd(a_i, a_j) > 1`.
pub fn max_disjoint_common_factor_pairs(orders: &[u64]) -> usize {
    fn go(orders: &[u64], used: &mut [bool], from: usize) -> usize {
        let Some(i) = (from..orders.len()).find(|&i| !used[i]) else { return 0 };
        used[i] = true;
        let mut best = go(orders, used, i + 1);
        for j in i + 1..orders.len() {
            if !used[j] && orders[i].gcd(&orders[j]) > 1 {
                used[j] = true;
                best = best.max(1 + go(orders, used, i + 1));
                used[j] = false;
            }
        }
        used[i] = false;
        best
    }
    go(orders, &mut vec![false; orders.len()], 0)
}

/// First triple of positions whose orders share a factor.
pub fn common_factor_triple(orders: &[u64]) -> Option<[usize; 3]> {
    let n = orders.len();
    (0..n)
        .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| [i, j, k])))
        .find(|&[i, j, k]| orders[i].gcd(&orders[j]).gcd(&orders[k]) > 1)
}

fn first_common_factor_pair(orders: &[u64]) -> Option<(usize, usize)> {
    let n = orders.len();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| orders[i].gcd(&orders[j]) > 1)
}

/// Position of a coprime pairing of four orders: 0 for `{12,34}`, 1 for
/// `{14,23}`, 2 for `{13,24}`.
fn coprime_pairing(a: &[u64]) -> Option<usize> {
    let cop = |i: usize, j: usize| a[i].gcd(&a[j]) == 1;
    if a.len() != 4 {
        None
    } else if cop(0, 1) && cop(2, 3) {
        Some(0)
    } else if cop(0, 3) && cop(1, 2) {
        Some(1)
    } else if cop(0, 2) && cop(1, 3) {
        Some(2)
    } else {
        None
    }
}

pub fn classify_base(b: &BaseOrbifold) -> AdmissibilityVerdict {
    let mut reasons = Vec::new();
    let (tag, open) = match b {
        BaseOrbifold::Sphere { cone_orders: a } => {
            let m = a.len();
            reasons.push(ConditionOutcome::new("at least three cone points", m >= 3, format!("m = {m}")));
            let triple = common_factor_triple(a);
            reasons.push(ConditionOutcome::new(
                "no three cone orders share a factor",
                triple.is_none(),
                match triple {
                    Some([i, j, k]) => format!("({}, {}, {}) share a factor", a[i], a[j], a[k]),
                    None => "none".into(),
                },
            ));
            let pairs = max_disjoint_common_factor_pairs(a);
            reasons.push(ConditionOutcome::new(
                "at most two disjoint pairs share a factor",
                pairs <= 2,
                format!("maximum {pairs}"),
            ));
            let open = if m >= 5 {
                Some("weight 1 not known for five or more cone points".to_string())
            } else if m == 4 && coprime_pairing(a).is_none() {
                Some("weight 1 not known without two coprime pairs".to_string())
            } else {
                None
            };
            (CaseTag::S2, open)
        }
        BaseOrbifold::Projective { cone_orders: bs } => {
            let m = bs.len();
            reasons.push(ConditionOutcome::new("two or three cone points", m == 2 || m == 3, format!("m = {m}")));
            let pair = first_common_factor_pair(bs);
            reasons.push(ConditionOutcome::new(
                "cone orders pairwise coprime",
                pair.is_none(),
                match pair {
                    Some((i, j)) => format!("gcd({}, {}) > 1", bs[i], bs[j]),
                    None => "yes".into(),
                },
            ));
            let has_two = m != 3 || bs.contains(&2);
            reasons.push(ConditionOutcome::new(
                "some order is 2 when there are three cone points",
                has_two,
                if m == 3 { format!("orders {}", join(bs)) } else { "not applicable".into() },
            ));
            let regular = reasons.iter().all(|r| r.passed);
            let mut sorted = bs.clone();
            sorted.sort_unstable();
            if !regular && sorted == [3, 4, 5] {
                reasons.push(ConditionOutcome::new("exceptional base P2(3,4,5)", true, "matches"));
                (CaseTag::P2Exceptional, Some("weight 1 not known for three cone points".to_string()))
            } else {
                let open = (m == 3).then(|| "weight 1 not known for three cone points".to_string());
                (CaseTag::P2, open)
            }
        }
        BaseOrbifold::Disk { cone_orders: c, corner_orders: d } => {
            let (p, q) = (c.len(), d.len());
            reasons.push(ConditionOutcome::new("at most two cone points", p <= 2, format!("p = {p}")));
            reasons.push(ConditionOutcome::new("2p + q >= 3", 2 * p + q >= 3, format!("2p + q = {}", 2 * p + q)));
            let even: Vec<u64> = c.iter().copied().filter(|x| x % 2 == 0).collect();
            reasons.push(ConditionOutcome::new(
                "cone orders odd",
                even.is_empty(),
                if even.is_empty() { "yes".into() } else { format!("even: {}", join(&even)) },
            ));
            let pair = first_common_factor_pair(c);
            reasons.push(ConditionOutcome::new(
                "cone orders pairwise coprime",
                pair.is_none(),
                match pair {
                    Some((i, j)) => format!("gcd({}, {}) > 1", c[i], c[j]),
                    None => "yes".into(),
                },
            ));
            let even_corners = d.iter().filter(|x| *x % 2 == 0).count();
            reasons.push(ConditionOutcome::new(
                "at most one even corner order",
                even_corners <= 1,
                format!("{even_corners} even"),
            ));
            let open = (p == 2).then(|| "weight 1 not known for two cone points".to_string());
            (CaseTag::Disk, open)
        }
    };
    let admissible = reasons.iter().all(|r| r.passed) || tag == CaseTag::P2Exceptional;
    AdmissibilityVerdict {
        admissible,
        case_tag: if admissible { tag } else { CaseTag::Rejected },
        reasons,
        open_status: if admissible { open } else { None },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Preserving,
    Reversing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbifoldPresentation {
    pub presentation: Presentation,
    pub orientation: Vec<Orientation>,
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn product(gens: std::ops::Range<usize>) -> Word {
    Word::from_syllables(gens.map(|g| (g, 1)))
}

/// The orbifold fundamental group. Sphere: `v_i^{a_i}`, `v_1...v_m`.
/// Projective plane: `u^-2 v_1...v_m`, `v_i^{b_i}`. Disk: `v_i^{c_i}`,
/// `x_j^2`, `(x_j x_{j+1})^{d_j}`, `x_{q+1} V (V x_1)^-1` with `V = v_1...v_p`.
pub fn orbifold_presentation(b: &BaseOrbifold) -> OrbifoldPresentation {
    use Orientation::*;
    let (gen_names, relators, orientation) = match b {
        BaseOrbifold::Sphere { cone_orders: a } => {
            let m = a.len();
            let mut rels: Vec<Word> = a.iter().enumerate().map(|(i, &ai)| Word::power_of(i, ai as i64)).collect();
            rels.push(product(0..m));
            (names("v", m), rels, vec![Preserving; m])
        }
        BaseOrbifold::Projective { cone_orders: bs } => {
            let m = bs.len();
            let mut gen_names = vec!["u".to_string()];
            gen_names.extend(names("v", m));
            let mut rels = vec![Word::power_of(0, -2).mul(&product(1..m + 1))];
            rels.extend(bs.iter().enumerate().map(|(i, &bi)| Word::power_of(i + 1, bi as i64)));
            let mut orient = vec![Reversing];
            orient.extend(std::iter::repeat_n(Preserving, m));
            (gen_names, rels, orient)
        }
        BaseOrbifold::Disk { cone_orders: c, corner_orders: d } => {
            let (p, q) = (c.len(), d.len());
            let mut gen_names = names("v", p);
            gen_names.extend(names("x", q + 1));
            let x = |j: usize| p + j;
            let mut rels: Vec<Word> = c.iter().enumerate().map(|(i, &ci)| Word::power_of(i, ci as i64)).collect();
            rels.extend((0..=q).map(|j| Word::power_of(x(j), 2)));
            rels.extend(
                d.iter()
                    .enumerate()
                    .map(|(j, &dj)| Word::from_syllables([(x(j), 1), (x(j + 1), 1)]).pow(dj as i64)),
            );
            let v = product(0..p);
            rels.push(Word::generator(x(q)).mul(&v).equate(&v.mul(&Word::generator(x(0)))));
            let mut orient = vec![Preserving; p];
            orient.extend(std::iter::repeat_n(Reversing, q + 1));
            (gen_names, rels, orient)
        }
    };
    let presentation = Presentation::new(gen_names, relators).expect("generated names are valid");
    OrbifoldPresentation { presentation, orientation }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalGeneratorWitness {
    pub word: Word,
    pub text: String,
    pub justification: String,
}

/// An explicit element whose normal closure is the whole orbifold group, in
/// the generators of [`orbifold_presentation`]. Only the three-cone sphere
/// bases, the four-cone sphere bases with a coprime pairing, and the
/// two-cone projective bases are covered.
pub fn normal_generator_witness(b: &BaseOrbifold) -> Option<NormalGeneratorWitness> {
    let pres = orbifold_presentation(b).presentation;
    let (word, justification) = match b {
        BaseOrbifold::Sphere { cone_orders: a } if a.len() == 3 => {
            if common_factor_triple(a).is_some() {
                return None;
            }
            let k = a.iter().position(|x| x % 2 == 1)?;
            let w = Word::from_syllables([(k, -1), ((k + 1) % 3, 1)]);
            let j = format!(
                "killing it identifies v{} with v{}; the third generator becomes a square, so orders {}, {} and {} leave the trivial group",
                k + 1,
                (k + 1) % 3 + 1,
                a[k],
                a[(k + 1) % 3],
                a[(k + 2) % 3]
            );
            (w, j)
        }
        BaseOrbifold::Sphere { cone_orders: a } if a.len() == 4 => {
            let (w, pairs) = match coprime_pairing(a)? {
                0 => (Word::from_syllables([(0, 1), (1, 1)]), "(1,2),(3,4)"),
                1 => (Word::from_syllables([(1, 1), (2, 1)]), "(2,3),(1,4)"),
                _ => (Word::from_syllables([(0, 1), (1, 1), (2, 1), (1, -1)]), "(1,3),(2,4)"),
            };
            (w, format!("cone orders form the coprime pairs {pairs}"))
        }
        BaseOrbifold::Projective { cone_orders: bs } if bs.len() == 2 => {
            if bs[0].gcd(&bs[1]) != 1 {
                return None;
            }
            let w = Word::from_syllables([(1, -1), (0, 1)]);
            (w, "killing it identifies u with v1, forcing v2 = v1 with coprime orders".to_string())
        }
        _ => return None,
    };
    Some(NormalGeneratorWitness { text: pres.format_word(&word), word, justification })
}
