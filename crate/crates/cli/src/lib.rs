//! Command-line front end. [`run`] parses an argument vector, executes one
//! subcommand and returns a [`CommandResult`] together with its plain-text
//! rendering; `main` only prints and exits.

use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbiweight::exact::{format_rational, is_good, lemma1_maps, parse_rational, psi, ExactError};
use orbiweight::group::{abelianization, minors_criterion, Presentation};
use orbiweight::nil::{
    check_theorem9_conditions, theorem10_report, theorem9_sweep, NilError, Theorem9Case, Theorem9Instance,
};
use orbiweight::orbifold::{classify_base, normal_generator_witness, orbifold_presentation, BaseOrbifold};
use orbiweight::seifert::{
    alexander_at_one, alexander_torus, connected_sum_surgery_data, euler_number, is_cyclotomic_squarefree,
    theorem5_check, torus_surgery_data, CheckStatus, SeifertData, SeifertError,
};
use orbiweight::weight::{
    find_rst_bruteforce, find_rst_constructive_traced, weight_certificate, QuasiPrimeTriple, ResidueData, Verdict,
    WeightError, WordExponents,
};
use orbiweight::{Poly, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

/// Version of the JSON payload layout; bumped on incompatible changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Precondition,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Precondition => 2,
            Status::Error => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommandResult {
    pub schema_version: u32,
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

/// A finished invocation: the structured result, its plain-text rendering
/// and the process exit code.
#[derive(Debug, Clone)]
pub struct Execution {
    pub result: CommandResult,
    pub text: String,
    pub json: bool,
    pub exit_code: i32,
}

impl Execution {
    /// What `main` writes to stdout.
    pub fn stdout(&self) -> String {
        if self.json {
            let mut s = serde_json::to_string_pretty(&self.result).expect("results serialize");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "orbiweight", version, about = "Exact certificates for weights of knot-like groups, orbifold bases and Seifert surgery data")]
struct Cli {
    /// Emit a JSON CommandResult instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// psi-values of a rational triple and whether it is good.
    GoodTriple(TripleArgs),
    /// The two floor-parity sign maps of a good triple.
    Lemma1(TripleArgs),
    /// Search for (r, s, t) making (rd/2a, se/2b, tf/2c) good.
    Lemma2(Lemma2Args),
    /// Weight-obstruction certificate for a word with given exponent sums.
    WeightCert(WeightCertArgs),
    /// Admissibility of a base orbifold such as "S2(2,3,6)" or "D(3;3)".
    ClassifyBase { spec: String },
    /// Orbifold fundamental group presentation and normal-generator witness.
    OrbifoldPres { spec: String },
    /// Abelianization of a presentation read from a file or "-" for stdin.
    Abelianize { input: String },
    /// Seifert data of 0-surgery on a torus knot or a sum of two.
    TorusSurgery {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        /// T(p,q) # T(p,-q) instead of T(p,q).
        #[arg(long)]
        sum: bool,
    },
    /// Necessary conditions on Seifert data of a knot surgery manifold.
    Theorem5 {
        /// e.g. "S2(2,3,6) ; (2,1) (3,1) (6,-5)".
        seifert: String,
        /// Alexander polynomial, e.g. "1 - t + t^2".
        #[arg(long, allow_hyphen_values = true)]
        alexander: Option<String>,
    },
    /// Alexander polynomial of the torus knot T(p,q).
    Alexander {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
    },
    /// Closed-form abelianization test for Z^2-extensions of orbifold groups.
    Theorem9(Theorem9Args),
    /// Knot group of the Nil-lattice family.
    Theorem10 {
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
    },
}

#[derive(Debug, Args)]
struct TripleArgs {
    #[arg(allow_hyphen_values = true)]
    xi: String,
    #[arg(allow_hyphen_values = true)]
    eta: String,
    #[arg(allow_hyphen_values = true)]
    zeta: String,
}

#[derive(Debug, Args)]
struct Lemma2Args {
    #[arg(long)]
    a: u64,
    #[arg(long)]
    b: u64,
    #[arg(long)]
    c: u64,
    #[arg(long, allow_hyphen_values = true)]
    d: i64,
    #[arg(long, allow_hyphen_values = true)]
    e: i64,
    #[arg(long, allow_hyphen_values = true)]
    f: i64,
    /// Use the exhaustive scan instead of the case analysis.
    #[arg(long)]
    brute: bool,
}

#[derive(Debug, Args)]
struct WeightCertArgs {
    #[arg(long)]
    a: u64,
    #[arg(long)]
    b: u64,
    #[arg(long)]
    c: u64,
    #[arg(long, allow_hyphen_values = true)]
    eu: i64,
    #[arg(long, allow_hyphen_values = true)]
    ex: i64,
    #[arg(long, allow_hyphen_values = true)]
    ey: i64,
    #[arg(long, allow_hyphen_values = true)]
    ez: i64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CaseArg {
    S2,
    P2,
    Disk,
}

impl From<CaseArg> for Theorem9Case {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::S2 => Theorem9Case::S2,
            CaseArg::P2 => Theorem9Case::P2,
            CaseArg::Disk => Theorem9Case::Disk,
        }
    }
}

#[derive(Debug, Args)]
struct Theorem9Args {
    #[arg(long, value_enum)]
    case: CaseArg,
    /// Cone orders (comma separated).
    #[arg(long, value_delimiter = ',')]
    orders: Vec<u64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    e: Vec<i64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    f: Vec<i64>,
    /// Corner orders (disk only).
    #[arg(long, value_delimiter = ',')]
    corners: Vec<u64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    g: Vec<i64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    h: Vec<i64>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    k: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    l: i64,
    /// Check this many random instances of the case instead.
    #[arg(long)]
    sweep: Option<usize>,
    #[arg(long, default_value_t = 9)]
    max_order: u64,
    #[arg(long, default_value_t = 9)]
    bound: i64,
}

/// Why a subcommand did not produce a result.
#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Error(String),
}

impl Failure {
    fn status(&self) -> Status {
        match self {
            Failure::Precondition(_) => Status::Precondition,
            Failure::Error(_) => Status::Error,
        }
    }
}

impl From<ExactError> for Failure {
    fn from(e: ExactError) -> Self {
        Failure::Precondition(e.to_string())
    }
}

impl From<WeightError> for Failure {
    fn from(e: WeightError) -> Self {
        match e {
            WeightError::NotQuasiPrime(_)
            | WeightError::RepeatedEntry(..)
            | WeightError::ResidueNotCoprime { .. }
            | WeightError::ExcludedTriple => Failure::Precondition(e.to_string()),
            WeightError::InternalInconsistency(_) | WeightError::InvalidWitness { .. } => Failure::Error(e.to_string()),
        }
    }
}

impl From<SeifertError> for Failure {
    fn from(e: SeifertError) -> Self {
        match e {
            SeifertError::Parse(_) => Failure::Error(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

impl From<NilError> for Failure {
    fn from(e: NilError) -> Self {
        match e {
            NilError::OddParameter(_) | NilError::MalformedInstance(_) => Failure::Precondition(e.to_string()),
            _ => Failure::Error(e.to_string()),
        }
    }
}

struct Output {
    payload: Value,
    text: String,
    diagnostics: Vec<String>,
}

impl Output {
    fn new(payload: Value, text: String) -> Self {
        Output { payload, text, diagnostics: Vec::new() }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payload types serialize")
}

fn rational_arg(name: &str, s: &str) -> Result<Rational, Failure> {
    parse_rational(s).ok_or_else(|| Failure::Error(format!("{name}: cannot parse {s:?} as a rational")))
}

fn triple_args(t: &TripleArgs) -> Result<[Rational; 3], Failure> {
    Ok([rational_arg("xi", &t.xi)?, rational_arg("eta", &t.eta)?, rational_arg("zeta", &t.zeta)?])
}

fn fmt_q(x: &Rational) -> String {
    format_rational(x)
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "yes"
    } else {
        "no"
    }
}

fn good_triple(t: &TripleArgs) -> Result<Output, Failure> {
    let xs = triple_args(t)?;
    let psis: Vec<Rational> = xs.iter().map(psi).collect();
    let good = is_good(&xs[0], &xs[1], &xs[2]);
    let payload = json!({
        "triple": xs.iter().map(fmt_q).collect::<Vec<_>>(),
        "psi": psis.iter().map(fmt_q).collect::<Vec<_>>(),
        "good": good,
    });
    let mut text = String::new();
    let sum = psis.iter().fold(Rational::from_integer(0), |a, b| a + b);
    let max = psis.iter().max().cloned().unwrap_or_default();
    writeln!(text, "psi = ({}, {}, {})", fmt_q(&psis[0]), fmt_q(&psis[1]), fmt_q(&psis[2])).unwrap();
    writeln!(text, "2 * max psi = {} vs sum psi = {}", fmt_q(&(max * 2)), fmt_q(&sum)).unwrap();
    writeln!(text, "good (2 max < sum): {}", verdict_word(good)).unwrap();
    Ok(Output::new(payload, text))
}

fn lemma1(t: &TripleArgs) -> Result<Output, Failure> {
    let [xi, eta, zeta] = triple_args(t)?;
    let (phi, theta) = lemma1_maps(&xi, &eta, &zeta)?;
    let payload = json!({
        "triple": [fmt_q(&xi), fmt_q(&eta), fmt_q(&zeta)],
        "phi": phi,
        "theta": theta,
        "phi_bijective": phi.is_bijection(),
        "theta_bijective": theta.is_bijection(),
        "distinct": phi != theta,
    });
    let mut text = String::new();
    writeln!(text, "phi(eps)   = (-1)^floor(xi + eta + eps*zeta) : {phi}").unwrap();
    writeln!(text, "theta(eps) = (-1)^floor(xi - eta + eps*zeta) : {theta}").unwrap();
    writeln!(text, "phi != theta: {}", verdict_word(phi != theta)).unwrap();
    writeln!(
        text,
        "some map is a bijection: {} (phi {}, theta {})",
        verdict_word(phi.is_bijection() || theta.is_bijection()),
        verdict_word(phi.is_bijection()),
        verdict_word(theta.is_bijection())
    )
    .unwrap();
    Ok(Output::new(payload, text))
}

fn lemma2(a: &Lemma2Args) -> Result<Output, Failure> {
    let t = QuasiPrimeTriple::new(a.a, a.b, a.c)?;
    let res = ResidueData::new(a.d, a.e, a.f);
    res.check_coprime(&t)?;
    let (method, witness, branch) = if a.brute {
        ("bruteforce", find_rst_bruteforce(&t, &res), None)
    } else {
        let o = find_rst_constructive_traced(&t, &res)?;
        ("constructive", Some(o.witness), Some(o.branch))
    };
    let coords = witness.map(|w| w.coordinates(&t, &res).iter().map(fmt_q).collect::<Vec<_>>());
    let payload = json!({
        "triple": t,
        "residues": res,
        "method": method,
        "witness": witness,
        "branch": branch,
        "coordinates": coords,
    });
    let mut text = format!("triple ({}, {}, {}), residues ({}, {}, {}), method {method}\n", t.a, t.b, t.c, res.d, res.e, res.f);
    match (witness, coords) {
        (Some(w), Some(c)) => {
            writeln!(text, "witness (r, s, t) = ({}, {}, {})", w.r, w.s, w.t).unwrap();
            writeln!(text, "good triple (rd/2a, se/2b, tf/2c) = ({}, {}, {})", c[0], c[1], c[2]).unwrap();
            if let Some(b) = branch {
                writeln!(text, "branch: {b:?}").unwrap();
            }
        }
        _ => writeln!(text, "no (r, s, t) with r < a, s < b, t < c, r/a + s/b + t/c < 1 gives a good triple").unwrap(),
    }
    Ok(Output::new(payload, text))
}

fn weight_cert(a: &WeightCertArgs) -> Result<Output, Failure> {
    let t = QuasiPrimeTriple::new(a.a, a.b, a.c)?;
    let cert = weight_certificate(&t, WordExponents::new(a.eu, a.ex, a.ey, a.ez));
    let r = cert.residues;
    let mut text = format!("residues (d, e, f) = ({}, {}, {})\n", r.d, r.e, r.f);
    match &cert.verdict {
        Verdict::KilledByDivisibility { reasons } => {
            for reason in reasons {
                writeln!(text, "excluded: {}", reason.describe()).unwrap();
            }
        }
        Verdict::ObstructedByGoodTriple { witness } => {
            writeln!(text, "not a weight element: good triple from (r, s, t) = ({}, {}, {})", witness.r, witness.s, witness.t).unwrap();
        }
        Verdict::NotObstructed => writeln!(text, "no obstruction found").unwrap(),
    }
    if let Some(ang) = &cert.angles {
        let v = to_value(ang);
        for k in ["alpha", "beta", "gamma", "delta"] {
            writeln!(text, "{k} = {} pi", v[k].as_str().unwrap_or("?")).unwrap();
        }
    }
    Ok(Output::new(to_value(&cert), text))
}

fn parse_base(spec: &str) -> Result<BaseOrbifold, Failure> {
    spec.parse().map_err(|e: orbiweight::orbifold::OrbifoldError| Failure::Error(e.to_string()))
}

fn classify(spec: &str) -> Result<Output, Failure> {
    let base = parse_base(spec)?;
    let v = classify_base(&base);
    let mut payload = to_value(&v);
    payload["base"] = json!(base.to_string());
    let mut text = format!("{base}: {}\n", if v.admissible { "admissible" } else { "rejected" });
    writeln!(text, "case: {:?}", v.case_tag).unwrap();
    for c in &v.reasons {
        writeln!(text, "  [{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.condition, c.detail).unwrap();
    }
    if let Some(open) = &v.open_status {
        writeln!(text, "open: {open}").unwrap();
    }
    Ok(Output::new(payload, text))
}

fn orbifold_pres(spec: &str) -> Result<Output, Failure> {
    let base = parse_base(spec)?;
    let op = orbifold_presentation(&base);
    let witness = normal_generator_witness(&base);
    let p = &op.presentation;
    let payload = json!({
        "base": base.to_string(),
        "generators": p.names(),
        "relators": p.relators().iter().map(|w| p.format_word(w)).collect::<Vec<_>>(),
        "orientation": op.orientation,
        "witness": witness.as_ref().map(|w| json!({"word": w.text, "justification": w.justification})),
    });
    let mut text = p.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &witness {
        Some(w) => writeln!(text, "normal generator: {} ({})", w.text, w.justification).unwrap(),
        None => writeln!(text, "normal generator: none known").unwrap(),
    }
    Ok(Output::new(payload, text))
}

/// The minors criterion enumerates all maximal minors; past this many it is skipped.
const MINOR_BUDGET: u128 = 20_000;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

fn abelianize(input: &str) -> Result<Output, Failure> {
    let source = if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Error(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(input).map_err(|e| Failure::Error(format!("{input}: {e}")))?
    };
    let p: Presentation = source.parse().map_err(|e: orbiweight::group::GroupError| Failure::Error(e.to_string()))?;
    let ab = abelianization(&p);
    let (rows, cols) = (p.relators().len(), p.generator_count());
    let minors = (cols >= 1 && binomial(rows, cols.min(rows)) * binomial(cols, cols.min(rows)) <= MINOR_BUDGET)
        .then(|| minors_criterion(&p.exponent_matrix()));
    let mut out = Output::new(
        json!({
            "generators": p.names(),
            "relator_count": rows,
            "abelianization": ab,
            "text": ab.to_string(),
            "infinite_cyclic": ab.is_infinite_cyclic(),
            "minors_criterion": minors,
        }),
        String::new(),
    );
    writeln!(out.text, "abelianization: {ab}").unwrap();
    writeln!(out.text, "infinite cyclic: {}", verdict_word(ab.is_infinite_cyclic())).unwrap();
    match minors {
        Some(m) => writeln!(out.text, "minors criterion: {}", verdict_word(m)).unwrap(),
        None => out.diagnostics.push("minors criterion skipped: too many minors".into()),
    }
    if minors.is_some_and(|m| m != ab.is_infinite_cyclic()) {
        return Err(Failure::Error("minors criterion disagrees with the Smith normal form".into()));
    }
    Ok(out)
}

fn seifert_payload(s: &SeifertData) -> Value {
    json!({
        "base": s.base().to_string(),
        "pairs": s.pairs(),
        "seifert": s.to_string(),
        "normalized": s.normalized().to_string(),
        "euler": format_rational(&euler_number(s)),
    })
}

fn torus_surgery(p: i64, q: i64, sum: bool) -> Result<Output, Failure> {
    let s = if sum { connected_sum_surgery_data(p, q)? } else { torus_surgery_data(p, q)? };
    let mut payload = seifert_payload(&s);
    payload["p"] = json!(p);
    payload["q"] = json!(q);
    payload["knot"] = json!(if sum { "connected_sum" } else { "torus" });
    let text = format!("{s}\nnormalized: {}\neuler number: {}\n", s.normalized(), format_rational(&euler_number(&s)));
    Ok(Output::new(payload, text))
}

fn status_word(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::NotComputable => "not computable",
        CheckStatus::NotChecked => "not checked",
    }
}

fn theorem5(spec: &str, alexander: Option<&str>) -> Result<Output, Failure> {
    let s: SeifertData = spec.parse()?;
    let poly: Option<Poly> = alexander
        .map(|a| a.parse().map_err(|e: SeifertError| Failure::Error(format!("alexander polynomial: {e}"))))
        .transpose()?;
    let report = theorem5_check(&s, poly.as_ref());
    let mut payload = to_value(&report);
    payload["seifert"] = json!(s.to_string());
    let mut text = format!("{s}\neuler number {}, sum 1/a_i = {}\n", format_rational(&report.euler_number), format_rational(&report.reciprocal_sum));
    for c in &report.conditions {
        writeln!(text, "  ({}) [{}] {}: {}", c.item, status_word(c.status), c.condition, c.detail).unwrap();
    }
    writeln!(text, "all checked conditions hold: {}", verdict_word(report.overall)).unwrap();
    Ok(Output::new(payload, text))
}

fn alexander(p: i64, q: i64) -> Result<Output, Failure> {
    let poly = alexander_torus(p, q)?;
    let report = is_cyclotomic_squarefree(&poly)?;
    let degree = poly.high() - poly.low();
    let payload = json!({
        "p": p,
        "q": q,
        "polynomial": poly.to_string(),
        "degree": degree,
        "at_one": alexander_at_one(&poly),
        "squarefree": report.squarefree,
        "cyclotomic_factors": report.cyclotomic_factors,
        "cyclotomic_squarefree": report.holds(),
    });
    let mut text = format!("Delta(t) = {poly}\ndegree {degree}, Delta(1) = {}\n", alexander_at_one(&poly));
    writeln!(text, "square-free: {}", verdict_word(report.squarefree)).unwrap();
    match &report.cyclotomic_factors {
        Some(ns) => writeln!(text, "product of Phi_n for n in {ns:?}").unwrap(),
        None => writeln!(text, "not a product of cyclotomic polynomials").unwrap(),
    }
    Ok(Output::new(payload, text))
}

fn theorem9(a: &Theorem9Args, seed: u64) -> Result<Output, Failure> {
    let case: Theorem9Case = a.case.into();
    if let Some(count) = a.sweep {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sweep = theorem9_sweep(&mut rng, case, count, a.max_order, a.bound)?;
        let mut text = format!("{case:?}: {} instances, {} agree with the Smith oracle\n", sweep.instances, sweep.agreements);
        writeln!(text, "{:<44} {:>9} {:>9} {:>9} {:>9}", "reading", "both Z", "pred only", "SNF only", "neither").unwrap();
        for t in &sweep.tallies {
            let c = &t.counts;
            writeln!(text, "{:<44} {:>9} {:>9} {:>9} {:>9}", t.name, c.both_true, c.predicted_only, c.oracle_only, c.both_false).unwrap();
        }
        return Ok(Output::new(to_value(&sweep), text));
    }
    let inst = match case {
        Theorem9Case::S2 => Theorem9Instance::sphere(&a.orders, &a.e, &a.f, a.k, a.l),
        Theorem9Case::P2 => Theorem9Instance::projective(&a.orders, &a.e, &a.f, a.k, a.l),
        Theorem9Case::Disk => Theorem9Instance::disk(&a.orders, &a.e, &a.f, &a.corners, &a.g, &a.h, a.k, a.l),
    };
    let check = check_theorem9_conditions(&inst)?;
    let pres = orbiweight::nil::build_theorem9_presentation(&inst)?;
    let ab = abelianization(&pres);
    let payload = json!({
        "instance": inst,
        "presentation": pres.to_string(),
        "abelianization": ab.to_string(),
        "check": check,
    });
    let mut text = pres.to_string();
    writeln!(text, "abelianization: {ab}").unwrap();
    writeln!(text, "closed form predicts Z: {}", verdict_word(check.predicted)).unwrap();
    writeln!(text, "Smith normal form gives Z: {}", verdict_word(check.oracle)).unwrap();
    for r in &check.readings {
        writeln!(text, "  reading \"{}\": predicts {}, {}", r.name, verdict_word(r.predicted), if r.agrees { "agrees" } else { "DISAGREES" }).unwrap();
    }
    if case == Theorem9Case::S2 {
        writeln!(text, "torsion gate gcd(a_i, e_i, f_i) = 1: {}", verdict_word(check.torsion_gate)).unwrap();
    }
    let mut out = Output::new(payload, text);
    if !check.agree {
        out.diagnostics.push("closed-form prediction disagrees with the Smith normal form".into());
    }
    Ok(out)
}

fn theorem10(e: i64) -> Result<Output, Failure> {
    let r = theorem10_report(e)?;
    let mut text = r.presentation.clone();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    writeln!(text, "abelianization: {}", r.abelianization).unwrap();
    writeln!(text, "Theta on T in basis (u, v): {:?}", r.theta).unwrap();
    writeln!(text, "Smith diagonal of Theta - I: {:?}, cokernel {}", r.smith_of_theta_minus_identity, r.cokernel).unwrap();
    for c in [&r.centrality, &r.first_power, &r.alternative] {
        writeln!(
            text,
            "{} central: {} (commutes with t {}, x {}, z {})",
            c.element,
            verdict_word(c.central),
            verdict_word(c.commutes_with_t),
            verdict_word(c.commutes_with_x),
            verdict_word(c.commutes_with_z)
        )
        .unwrap();
    }
    let mut out = Output::new(to_value(&r), text);
    if !r.centrality.central {
        out.diagnostics.push(format!("{} is not central for e = {e}", r.centrality.element));
    }
    Ok(out)
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::GoodTriple(t) => good_triple(t),
        Command::Lemma1(t) => lemma1(t),
        Command::Lemma2(a) => lemma2(a),
        Command::WeightCert(a) => weight_cert(a),
        Command::ClassifyBase { spec } => classify(spec),
        Command::OrbifoldPres { spec } => orbifold_pres(spec),
        Command::Abelianize { input } => abelianize(input),
        Command::TorusSurgery { p, q, sum } => torus_surgery(*p, *q, *sum),
        Command::Theorem5 { seifert, alexander } => theorem5(seifert, alexander.as_deref()),
        Command::Alexander { p, q } => alexander(*p, *q),
        Command::Theorem9(a) => theorem9(a, cli.seed),
        Command::Theorem10 { e } => theorem10(*e),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::GoodTriple(_) => "good-triple",
        Command::Lemma1(_) => "lemma1",
        Command::Lemma2(_) => "lemma2",
        Command::WeightCert(_) => "weight-cert",
        Command::ClassifyBase { .. } => "classify-base",
        Command::OrbifoldPres { .. } => "orbifold-pres",
        Command::Abelianize { .. } => "abelianize",
        Command::TorusSurgery { .. } => "torus-surgery",
        Command::Theorem5 { .. } => "theorem5",
        Command::Alexander { .. } => "alexander",
        Command::Theorem9(_) => "theorem9",
        Command::Theorem10 { .. } => "theorem10",
    }
}

/// Parse `argv` (including the program name) and execute it.
pub fn run<I, T>(argv: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let json_flag = argv.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let informational = matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let status = if informational { Status::Ok } else { Status::Error };
            let mut rendered = err.render().to_string();
            if err.kind() == ErrorKind::InvalidSubcommand {
                use clap::CommandFactory;
                rendered = format!("{rendered}\n{}", Cli::command().render_help());
            }
            return Execution {
                result: CommandResult {
                    schema_version: SCHEMA_VERSION,
                    command: String::new(),
                    status,
                    payload: Value::Null,
                    diagnostics: if informational { Vec::new() } else { vec![rendered.clone()] },
                },
                text: rendered,
                json: json_flag && !informational,
                exit_code: status.exit_code(),
            };
        }
    };
    let command = command_name(&cli.command).to_string();
    let (status, payload, text, diagnostics) = match dispatch(&cli) {
        Ok(out) => (Status::Ok, out.payload, out.text, out.diagnostics),
        Err(f) => {
            let status = f.status();
            let label = if status == Status::Precondition { "precondition violated" } else { "error" };
            let msg = f.to_string();
            let text = if msg.starts_with(label) { format!("{msg}\n") } else { format!("{label}: {msg}\n") };
            (status, Value::Null, text, vec![msg])
        }
    };
    Execution {
        result: CommandResult { schema_version: SCHEMA_VERSION, command, status, payload, diagnostics },
        text,
        json: cli.json,
        exit_code: status.exit_code(),
    }
}

/// Caps the global rayon pool at `ORBIWEIGHT_THREADS` when it is set to a
/// positive integer.
pub fn configure_threads() {
    if let Some(n) = std::env::var("ORBIWEIGHT_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            // Fails only if a pool was already built, in which case it stays as is.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

