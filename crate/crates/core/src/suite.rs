//! The named battery of identity checks behind `virasoro verify`.
//!
//! Every check computes a value and compares it with a pinned expectation
//! from `data/expected.toml`. Element-valued expectations are parsed with
//! the expression grammar and compared as elements of `U(V)`; everything
//! else is compared as text.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dsl;
use crate::lie::{self, Generator};
use crate::modules::BasisLabel;
use crate::pbw::{self, BaseOrder, OrderSpec, RandomSwap};
use crate::{LieElement, Rational, TruncatedWeightModule, UEAElement, Virasoro, WeightVector};

/// The expected-value file compiled into the binary.
pub const EMBEDDED_EXPECTED: &str = include_str!("../data/expected.toml");
/// File name looked up beside the executable and in [`EXPECTED_DIR_VAR`].
pub const EXPECTED_FILE: &str = "expected.toml";
/// Environment variable naming a directory that holds [`EXPECTED_FILE`].
pub const EXPECTED_DIR_VAR: &str = "VIRASORO_EXPECTED_DIR";

pub const MAX_VERMA_DEPTH: u32 = 12;
pub const MAX_WINDOW_RADIUS: i64 = 20;
pub const MIN_WINDOW_RADIUS: i64 = 2;
pub const MAX_FACT_RANGE: i64 = 50;
pub const MIN_FACT_RANGE: i64 = 3;

const OMEGA: &str = "e(1)^3 - 6*e(2)*e(1) + 6*e(3)";
const BASIS_SPAN: i64 = 8;

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("no check or group named `{0}`")]
    UnknownCheck(String),
    #[error("cannot use expected values from {origin}: {message}")]
    Expected { origin: String, message: String },
}

/// A deliberate corruption of the structure constants, for negative controls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Perturbation {
    /// Adds `delta` to the `e_{i+j}` coefficient of `[e_i, e_j]`.
    Structure { i: i64, j: i64, delta: Rational },
    /// Adds `delta` to the `c` coefficient of `[e_i, e_{-i}]`.
    Central { i: i64, delta: Rational },
}

impl fmt::Display for Perturbation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Perturbation::Structure { i, j, delta } => {
                write!(f, "[e({i}),e({j})] += {delta}*e({})", i + j)
            }
            Perturbation::Central { i, delta } => write!(f, "[e({i}),e({})] += {delta}*c", -i),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Depth of the Verma truncation whose dimensions are checked.
    pub verma_depth: u32,
    /// Intermediate-series windows are `[-r, r]`.
    pub window_radius: i64,
    /// Bracket facts are instantiated for indices in `[3, fact_range]`.
    pub fact_range: i64,
    pub seed: u64,
    /// Check names or group prefixes (`cubic`); empty runs everything.
    pub only: Vec<String>,
    pub perturbations: Vec<Perturbation>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            verma_depth: 10,
            window_radius: 10,
            fact_range: 10,
            seed: 0x5eed,
            only: Vec::new(),
            perturbations: Vec::new(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), SuiteError> {
        let bad = |m: String| Err(SuiteError::Config(m));
        if self.verma_depth > MAX_VERMA_DEPTH {
            return bad(format!("Verma depth {} exceeds {MAX_VERMA_DEPTH}", self.verma_depth));
        }
        if !(MIN_WINDOW_RADIUS..=MAX_WINDOW_RADIUS).contains(&self.window_radius) {
            return bad(format!(
                "window radius {} outside [{MIN_WINDOW_RADIUS}, {MAX_WINDOW_RADIUS}]",
                self.window_radius
            ));
        }
        if !(MIN_FACT_RANGE..=MAX_FACT_RANGE).contains(&self.fact_range) {
            return bad(format!(
                "bracket-fact range {} outside [{MIN_FACT_RANGE}, {MAX_FACT_RANGE}]",
                self.fact_range
            ));
        }
        for p in &self.perturbations {
            match p {
                Perturbation::Structure { delta, .. } | Perturbation::Central { delta, .. }
                    if delta.is_zero() =>
                {
                    return bad(format!("perturbation {p} has zero size"));
                }
                Perturbation::Structure { i, j, .. } if i == j => {
                    return bad(format!("[e({i}),e({i})] is zero by antisymmetry"));
                }
                Perturbation::Central { i: 0, .. } => {
                    return bad("[e(0),e(0)] is zero by antisymmetry".into());
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// The algebra the checks run in: the standard one plus any perturbations.
    pub fn algebra(&self) -> Virasoro {
        let mut alg = Virasoro::standard();
        for p in &self.perturbations {
            match p {
                Perturbation::Structure { i, j, delta } => alg.perturb(*i, *j, delta.clone()),
                Perturbation::Central { i, delta } => alg.perturb_central(*i, delta.clone()),
            }
        }
        alg
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedEntry {
    pub expected: String,
    pub source: String,
    /// Uncollected form of the expectation as displayed in the source; it
    /// must collect to `expected`.
    #[serde(default)]
    pub display: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpectedFile {
    schema: u32,
    checks: BTreeMap<String, ExpectedEntry>,
}

/// Pinned expected values with their provenance.
#[derive(Clone, Debug)]
pub struct Expected {
    entries: BTreeMap<String, ExpectedEntry>,
    sha256: String,
    origin: String,
}

impl Expected {
    pub fn parse(text: &str, origin: &str) -> Result<Self, SuiteError> {
        let err = |message: String| SuiteError::Expected {
            origin: origin.to_string(),
            message,
        };
        let file: ExpectedFile = toml::from_str(text).map_err(|e| err(e.to_string()))?;
        if file.schema != 1 {
            return Err(err(format!("unsupported schema {}", file.schema)));
        }
        if let Some(name) = file.checks.keys().find(|n| !is_check(n)) {
            return Err(err(format!("unknown check `{name}`")));
        }
        Ok(Self {
            entries: file.checks,
            sha256: hex::encode(Sha256::digest(text.as_bytes())),
            origin: origin.to_string(),
        })
    }

    pub fn embedded() -> Self {
        Self::parse(EMBEDDED_EXPECTED, "embedded").expect("embedded expected values are valid")
    }

    pub fn load(path: &Path) -> Result<Self, SuiteError> {
        let origin = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| SuiteError::Expected {
            origin: origin.clone(),
            message: e.to_string(),
        })?;
        Self::parse(&text, &origin)
    }

    /// Resolves the expected-value file: an explicit path, then
    /// `$VIRASORO_EXPECTED_DIR/expected.toml`, then `expected.toml` beside
    /// the executable, then the embedded copy.
    pub fn locate(explicit: Option<&Path>) -> Result<Self, SuiteError> {
        if let Some(p) = explicit {
            return Self::load(p);
        }
        if let Some(dir) = std::env::var_os(EXPECTED_DIR_VAR) {
            return Self::load(&PathBuf::from(dir).join(EXPECTED_FILE));
        }
        let beside = std::env::current_exe()
            .ok()
            .and_then(|exe| exe.parent().map(|d| d.join(EXPECTED_FILE)))
            .filter(|p| p.is_file());
        match beside {
            Some(p) => Self::load(&p),
            None => Ok(Self::embedded()),
        }
    }

    pub fn get(&self, name: &str) -> Option<&ExpectedEntry> {
        self.entries.get(name)
    }

    pub fn sha256(&self) -> &str {
        &self.sha256
    }

    pub fn origin(&self) -> &str {
        &self.origin
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// True iff `computed` equals `expected` exactly.
    pub passed: bool,
    pub computed: String,
    pub expected: String,
    /// Provenance of the expected value: "published" or "derived".
    pub source: String,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fingerprint {
    pub version: String,
    pub orders: Vec<String>,
    pub fact_range: [i64; 2],
    pub verma_depth: u32,
    pub window_radius: i64,
    pub seed: u64,
    pub expected_origin: String,
    pub expected_sha256: String,
    pub perturbations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub engine: Fingerprint,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> + '_ {
        self.results.iter().filter(|r| !r.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let tag = if r.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag}  {}  ({:.1} ms)\n", r.name, r.elapsed_ms));
            if !r.passed {
                out.push_str(&format!("      computed: {}\n", r.computed));
                out.push_str(&format!("      expected: {}\n", r.expected));
            }
            if let Some(note) = r.note.as_ref().filter(|_| !r.passed) {
                out.push_str(&format!("      note: {note}\n"));
            }
        }
        if self.all_passed() {
            out.push_str(&format!("all checks passed ({} of {})\n", self.summary.passed, self.summary.total));
        } else {
            let names: Vec<&str> = self.failed().map(|r| r.name.as_str()).collect();
            out.push_str(&format!(
                "{} of {} checks failed: {}\n",
                self.summary.failed,
                self.summary.total,
                names.join(", ")
            ));
        }
        out
    }
}

/// Names of all checks, in report order.
pub fn check_names() -> impl Iterator<Item = &'static str> {
    REGISTRY.iter().map(|(n, _)| *n)
}

fn is_check(name: &str) -> bool {
    check_names().any(|n| n == name)
}

fn selected(only: &[String]) -> Result<Vec<(&'static str, CheckFn)>, SuiteError> {
    for pat in only {
        if !check_names().any(|n| n == pat || n.split('.').next() == Some(pat)) {
            return Err(SuiteError::UnknownCheck(pat.clone()));
        }
    }
    Ok(REGISTRY
        .iter()
        .copied()
        .filter(|(n, _)| {
            only.is_empty()
                || only
                    .iter()
                    .any(|p| n == p || n.split('.').next() == Some(p.as_str()))
        })
        .collect())
}

/// Runs the selected checks. Checks run concurrently; results follow the
/// registry order.
pub fn run_all(cfg: &RunConfig, expected: &Expected) -> Result<Report, SuiteError> {
    cfg.validate()?;
    let checks = selected(&cfg.only)?;
    let alg = cfg.algebra();
    let results: Vec<CheckResult> = std::thread::scope(|s| {
        let handles: Vec<_> = checks
            .iter()
            .map(|&(name, f)| {
                let ctx = Ctx { cfg, alg: alg.clone(), name };
                (name, s.spawn(move || run_one(&ctx, f, expected)))
            })
            .collect();
        handles
            .into_iter()
            .map(|(name, h)| {
                h.join().unwrap_or_else(|_| CheckResult {
                    name: name.to_string(),
                    passed: false,
                    computed: "panicked".into(),
                    expected: expected.get(name).map(|e| e.expected.clone()).unwrap_or_default(),
                    source: expected.get(name).map(|e| e.source.clone()).unwrap_or_default(),
                    elapsed_ms: 0.0,
                    note: None,
                })
            })
            .collect()
    });
    let passed = results.iter().filter(|r| r.passed).count();
    Ok(Report {
        schema: 1,
        engine: Fingerprint {
            version: env!("CARGO_PKG_VERSION").to_string(),
            orders: orders().iter().map(|o| o.to_string()).collect(),
            fact_range: [MIN_FACT_RANGE, cfg.fact_range],
            verma_depth: cfg.verma_depth,
            window_radius: cfg.window_radius,
            seed: cfg.seed,
            expected_origin: expected.origin().to_string(),
            expected_sha256: expected.sha256().to_string(),
            perturbations: cfg.perturbations.iter().map(|p| p.to_string()).collect(),
        },
        summary: Summary {
            total: results.len(),
            passed,
            failed: results.len() - passed,
        },
        results,
    })
}

// ---------------------------------------------------------------------------
// check plumbing

type CheckFn = fn(&Ctx) -> Outcome;

struct Ctx<'a> {
    cfg: &'a RunConfig,
    alg: Virasoro,
    name: &'static str,
}

impl Ctx<'_> {
    /// Per-check generator, independent of scheduling.
    fn rng(&self) -> ChaCha8Rng {
        let salt = self
            .name
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
        ChaCha8Rng::seed_from_u64(self.cfg.seed ^ salt)
    }

    /// Evaluates a fixed suite input in the run's algebra.
    fn elem(&self, text: &str, order: &OrderSpec) -> UEAElement {
        let tree = dsl::parse(text).expect("suite inputs parse");
        dsl::to_element(&tree, &self.alg, order).expect("suite inputs evaluate")
    }
}

enum Value {
    Element(UEAElement),
    Text(String),
    /// Verma weight-space dimensions by level.
    Dims(Vec<usize>),
}

struct Outcome {
    value: Value,
    note: Option<String>,
}

impl Outcome {
    fn element(u: UEAElement) -> Self {
        Self { value: Value::Element(u), note: None }
    }

    fn text(s: impl Into<String>) -> Self {
        Self { value: Value::Text(s.into()), note: None }
    }

    /// "ok", or the first failure found.
    fn verdict(failure: Option<String>) -> Self {
        Self::text(failure.unwrap_or_else(|| "ok".into()))
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

fn run_one(ctx: &Ctx, f: CheckFn, expected: &Expected) -> CheckResult {
    let start = Instant::now();
    let outcome = f(ctx);
    let entry = expected.get(ctx.name);
    let mut notes: Vec<String> = outcome.note.into_iter().collect();
    let (computed, expected_text, passed) = match (outcome.value, entry) {
        (value, None) => {
            notes.push("no pinned expected value".into());
            (render(&value), String::new(), false)
        }
        (Value::Text(s), Some(e)) => {
            let ok = s == e.expected;
            (s, e.expected.clone(), ok)
        }
        (Value::Element(u), Some(e)) => {
            let computed = dsl::format(&u);
            let mut ok = match dsl::parse_element::<Rational>(&e.expected, u.order()) {
                Ok(x) => x == u,
                Err(err) => {
                    notes.push(format!("expected value does not parse: {err}"));
                    false
                }
            };
            if let Some(display) = &e.display {
                notes.push(format!("as displayed: {display}"));
                let collected = dsl::parse_element::<Rational>(display, u.order());
                let pinned = dsl::parse_element::<Rational>(&e.expected, u.order());
                if !matches!((collected, pinned), (Ok(a), Ok(b)) if a == b) {
                    notes.push("displayed form does not collect to the expected value".into());
                    ok = false;
                }
            }
            (computed, e.expected.clone(), ok)
        }
        (Value::Dims(d), Some(e)) => {
            let computed = join(&d);
            match expected_dims(&e.expected, d.len()) {
                Ok((want, note)) => {
                    notes.extend(note);
                    let ok = want == d;
                    (computed, join(&want), ok)
                }
                Err(msg) => {
                    notes.push(msg);
                    (computed, e.expected.clone(), false)
                }
            }
        }
    };
    CheckResult {
        name: ctx.name.to_string(),
        passed,
        computed,
        expected: expected_text,
        source: entry.map(|e| e.source.clone()).unwrap_or_default(),
        elapsed_ms: (start.elapsed().as_secs_f64() * 1e6).round() / 1e3,
        note: (!notes.is_empty()).then(|| notes.join("; ")),
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::Element(u) => dsl::format(u),
        Value::Text(s) => s.clone(),
        Value::Dims(d) => join(d),
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// The pinned list truncated to `len`, extended past its end by the
/// pentagonal-number recurrence for the partition function.
fn expected_dims(pinned: &str, len: usize) -> Result<(Vec<usize>, Option<String>), String> {
    let mut dims = pinned
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| format!("expected dimensions do not parse: {e}"))?;
    let note = (dims.len() < len).then(|| {
        format!("levels {} and above use the pentagonal-number recurrence", dims.len())
    });
    let p = partition_counts(len);
    while dims.len() < len {
        dims.push(p[dims.len()]);
    }
    dims.truncate(len);
    Ok((dims, note))
}

fn partition_counts(len: usize) -> Vec<usize> {
    let mut p: Vec<i64> = vec![1];
    for n in 1..len as i64 {
        let mut total = 0;
        for k in 1.. {
            let (g1, g2) = (k * (3 * k - 1) / 2, k * (3 * k + 1) / 2);
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            total += sign * p[(n - g1) as usize];
            if g2 <= n {
                total += sign * p[(n - g2) as usize];
            }
        }
        p.push(total);
    }
    p.into_iter().take(len).map(|x| x as usize).collect()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn z(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

const REGISTRY: &[(&str, CheckFn)] = &[
    ("bracket.antisymmetry", bracket_antisymmetry),
    ("bracket.jacobi", bracket_jacobi),
    ("bracket.central", bracket_central),
    ("bracket.involution", bracket_involution),
    ("facts.e1_ek", facts_e1_ek),
    ("facts.em1_el", facts_em1_el),
    ("facts.ek_e2", facts_ek_e2),
    ("facts.e1_em1", facts_e1_em1),
    ("facts.e1_em2", facts_e1_em2),
    ("omega_e2.reduction", omega_e2_reduction),
    ("omega_e2.normal_form", omega_e2_normal_form),
    ("omega_e2.module_replay", omega_e2_module_replay),
    ("cubic.reduction", cubic_reduction),
    ("cubic.roots", cubic_roots),
    ("cubic.mu_set", cubic_mu_set),
    ("cubic.cross_check", cubic_cross_check),
    ("quadratic.reduction", quadratic_reduction),
    ("quadratic.tail", quadratic_tail),
    ("quadratic.product", quadratic_product),
    ("modules.verma_dims", modules_verma_dims),
    ("modules.series_dims", modules_series_dims),
    ("modules.e0_diagonal", modules_e0_diagonal),
    ("modules.action_compat", modules_action_compat),
    ("modules.detectors", modules_detectors),
    ("modules.level1_singular", modules_level1_singular),
    ("modules.pairs_series", modules_pairs_series),
    ("modules.pairs_generic", modules_pairs_generic),
    ("pbw.confluence", pbw_confluence),
    ("pbw.associativity", pbw_associativity),
    ("pbw.order_round_trip", pbw_order_round_trip),
    ("pbw.ideal_soundness", pbw_ideal_soundness),
    ("pbw.grading", pbw_grading),
    ("pbw.idempotence", pbw_idempotence),
    ("pbw.involution", pbw_involution),
];

// ---------------------------------------------------------------------------
// brackets

fn span() -> std::ops::RangeInclusive<i64> {
    -BASIS_SPAN..=BASIS_SPAN
}

fn random_lie(rng: &mut ChaCha8Rng) -> LieElement {
    let n = rng.gen_range(1..=3);
    LieElement::from_terms((0..n).map(|_| {
        let g = if rng.gen_ratio(1, 8) {
            Generator::C
        } else {
            Generator::E(rng.gen_range(-6..=6))
        };
        (g, q(rng.gen_range(-5..=5), rng.gen_range(1..=4)))
    }))
}

fn bracket_antisymmetry(ctx: &Ctx) -> Outcome {
    let failure = span().flat_map(|i| span().map(move |j| (i, j))).find_map(|(i, j)| {
        let s = ctx.alg.bracket_gen(i, j).add(&ctx.alg.bracket_gen(j, i));
        (!s.is_zero()).then(|| format!("[e({i}),e({j})] + [e({j}),e({i})] = {s}"))
    });
    Outcome::verdict(failure)
}

fn bracket_jacobi(ctx: &Ctx) -> Outcome {
    let mut failure = None;
    'outer: for i in span() {
        for j in span() {
            for k in span() {
                let d = ctx
                    .alg
                    .jacobi_defect(&LieElement::e(i), &LieElement::e(j), &LieElement::e(k));
                if !d.is_zero() {
                    failure = Some(format!("defect at (e({i}), e({j}), e({k})): {d}"));
                    break 'outer;
                }
            }
        }
    }
    let mut rng = ctx.rng();
    if failure.is_none() {
        failure = (0..100).find_map(|_| {
            let (x, y, z) = (random_lie(&mut rng), random_lie(&mut rng), random_lie(&mut rng));
            let d = ctx.alg.jacobi_defect(&x, &y, &z);
            (!d.is_zero()).then(|| format!("defect at ({x}, {y}, {z}): {d}"))
        });
    }
    Outcome::verdict(failure).with_note("4913 basis triples in [-8, 8] and 100 random triples")
}

fn bracket_central(ctx: &Ctx) -> Outcome {
    let failure = span().find_map(|i| {
        let a = ctx.alg.bracket_basis(Generator::C, Generator::E(i));
        let b = ctx.alg.bracket_basis(Generator::E(i), Generator::C);
        (!(a.is_zero() && b.is_zero())).then(|| format!("[c, e({i})] = {a}"))
    });
    Outcome::verdict(failure)
}

fn bracket_involution(ctx: &Ctx) -> Outcome {
    let failure = span().flat_map(|i| span().map(move |j| (i, j))).find_map(|(i, j)| {
        let (x, y) = (LieElement::e(i), LieElement::e(j));
        let lhs = lie::involution(&ctx.alg.bracket(&x, &y));
        let rhs = ctx.alg.bracket(&lie::involution(&x), &lie::involution(&y));
        if lhs != rhs {
            return Some(format!("theta[e({i}),e({j})] = {lhs} but [theta e({i}), theta e({j})] = {rhs}"));
        }
        (lie::involution(&lie::involution(&x)) != x).then(|| format!("theta^2 e({i}) != e({i})"))
    });
    Outcome::verdict(failure)
}

// ---------------------------------------------------------------------------
// bracket facts

fn fact_indices(ctx: &Ctx) -> std::ops::RangeInclusive<i64> {
    MIN_FACT_RANGE..=ctx.cfg.fact_range
}

fn fact_note(ctx: &Ctx, var: &str) -> String {
    format!("{var} in [{MIN_FACT_RANGE}, {}]", ctx.cfg.fact_range)
}

fn first_nonzero(items: impl Iterator<Item = (String, String, bool)>) -> Outcome {
    let failure = items
        .filter(|(_, _, zero)| !zero)
        .map(|(at, val, _)| format!("{at}: {val}"))
        .next();
    Outcome::text(failure.unwrap_or_else(|| "0".into()))
}

fn facts_e1_ek(ctx: &Ctx) -> Outcome {
    first_nonzero(fact_indices(ctx).map(|k| {
        let d = ctx
            .alg
            .bracket_gen(1, k)
            .sub(&LieElement::term(Generator::E(k + 1), z(k - 1)));
        (format!("k={k}"), d.to_string(), d.is_zero())
    }))
    .with_note(fact_note(ctx, "k"))
}

fn facts_em1_el(ctx: &Ctx) -> Outcome {
    first_nonzero(fact_indices(ctx).map(|l| {
        let b = ctx.alg.bracket_gen(-1, l);
        let d = b.sub(&LieElement::term(Generator::E(l - 1), z(l + 1)));
        (format!("l={l}"), d.to_string(), d.is_zero() && !b.is_zero())
    }))
    .with_note(fact_note(ctx, "l"))
}

fn facts_ek_e2(ctx: &Ctx) -> Outcome {
    let asc = OrderSpec::asc();
    first_nonzero(fact_indices(ctx).map(|k| {
        let lhs = ctx.alg.normal_form(&pbw::word(&[k, 2]), &asc);
        let rhs = pbw::element_from_words(&ctx.alg, &[(z(1), &[2, k]), (z(2 - k), &[k + 2])], &asc);
        let d = lhs.sub(&rhs);
        (format!("k={k}"), d.to_string(), d.is_zero())
    }))
    .with_note(fact_note(ctx, "k"))
}

fn facts_e1_em1(ctx: &Ctx) -> Outcome {
    Outcome::element(ctx.alg.normal_form(&pbw::word(&[1, -1]), &OrderSpec::asc()))
}

fn facts_e1_em2(ctx: &Ctx) -> Outcome {
    Outcome::element(ctx.alg.normal_form(&pbw::word(&[1, -2]), &OrderSpec::asc()))
}

// ---------------------------------------------------------------------------
// displayed reductions

fn reduce_or_text(ctx: &Ctx, u: &UEAElement, g: i64) -> Result<UEAElement, Outcome> {
    ctx.alg
        .reduce_mod_left_ideal(u, g)
        .map_err(|e| Outcome::text(format!("error: {e}")))
}

fn omega_times_e2(ctx: &Ctx, order: &OrderSpec) -> UEAElement {
    ctx.elem(&format!("({OMEGA})*e(2)"), order)
}

fn omega_e2_reduction(ctx: &Ctx) -> Outcome {
    let u = omega_times_e2(ctx, &OrderSpec::asc());
    match reduce_or_text(ctx, &u, 1) {
        Ok(r) => Outcome::element(r),
        Err(o) => o,
    }
}

fn omega_e2_normal_form(ctx: &Ctx) -> Outcome {
    Outcome::element(omega_times_e2(ctx, &OrderSpec::ann(1)))
}

fn omega_e2_module_replay(ctx: &Ctx) -> Outcome {
    let (h, depth) = (q(1, 3), 8);
    let m = TruncatedWeightModule::verma_with(ctx.alg.clone(), h.clone(), q(1, 2), depth);
    let op = omega_times_e2(ctx, &OrderSpec::asc());
    let mut tested = 0;
    for level in 5..=depth as i64 {
        let w = h.clone() - z(level);
        let kernel = match m.kernel(&w, &[Generator::E(1)]) {
            Ok(k) => k,
            Err(e) => return Outcome::text(format!("error: {e}")),
        };
        for v in kernel {
            tested += 1;
            match m.act_element(&op, &v) {
                Ok(img) if img.is_zero() => {}
                Ok(img) => return Outcome::text(format!("operator maps {v} to {img}")),
                Err(e) => return Outcome::text(format!("error: {e}")),
            }
        }
    }
    if tested == 0 {
        return Outcome::text("no kernel vectors to test");
    }
    Outcome::text("ok").with_note(format!(
        "{tested} vectors killed by e(1) at levels 5..={depth} of Verma(h=1/3, c=1/2)"
    ))
}

fn cubic_reduced(ctx: &Ctx) -> Result<UEAElement, Outcome> {
    let u = ctx.elem(&format!("e(-1)^3*({OMEGA})"), &OrderSpec::asc());
    reduce_or_text(ctx, &u, -1)
}

fn cubic_reduction(ctx: &Ctx) -> Outcome {
    match cubic_reduced(ctx) {
        Ok(r) => Outcome::element(r),
        Err(o) => o,
    }
}

fn cubic_root_set(ctx: &Ctx, shift: i64) -> Outcome {
    let r = match cubic_reduced(ctx) {
        Ok(r) => r,
        Err(o) => return o,
    };
    let roots = pbw::cartan_polynomial(&r).and_then(|p| pbw::rational_roots(&p));
    match roots {
        Ok(mut roots) => {
            roots.sort();
            let shifted: Vec<Rational> = roots.into_iter().map(|t| t + z(shift)).collect();
            Outcome::text(format!("{{{}}}", join(&shifted)))
        }
        Err(e) => Outcome::text(format!("error: {e}")),
    }
}

fn cubic_roots(ctx: &Ctx) -> Outcome {
    cubic_root_set(ctx, 0)
}

fn cubic_mu_set(ctx: &Ctx) -> Outcome {
    cubic_root_set(ctx, -1).with_note("mu = t - 1 for each root t")
}

fn cubic_cross_check(ctx: &Ctx) -> Outcome {
    let u = ctx.elem("e(-1)^3*e(1)^3", &OrderSpec::asc());
    match reduce_or_text(ctx, &u, -1) {
        Ok(r) => Outcome::element(r),
        Err(o) => o,
    }
}

fn quadratic_reduced(ctx: &Ctx) -> Result<UEAElement, Outcome> {
    let u = ctx.elem(&format!("e(-1)*({OMEGA})"), &OrderSpec::asc());
    reduce_or_text(ctx, &u, -1)
}

fn quadratic_reduction(ctx: &Ctx) -> Outcome {
    match quadratic_reduced(ctx) {
        Ok(r) => Outcome::element(r),
        Err(o) => o,
    }
}

fn quadratic_tail(ctx: &Ctx) -> Outcome {
    let r = match quadratic_reduced(ctx) {
        Ok(r) => r,
        Err(o) => return o,
    };
    match pbw::eval_cartan_tail(&r, &z(1), &z(0)) {
        Ok(t) => Outcome::element(t).with_note("e(0) -> 1"),
        Err(e) => Outcome::text(format!("error: {e}")),
    }
}

fn quadratic_product(ctx: &Ctx) -> Outcome {
    Outcome::element(ctx.elem("e(-2)*(2*e(2) - e(1)^2)", &OrderSpec::desc()))
}

// ---------------------------------------------------------------------------
// modules

fn generic_verma(ctx: &Ctx, depth: u32) -> TruncatedWeightModule {
    TruncatedWeightModule::verma_with(ctx.alg.clone(), q(1, 3), q(1, 2), depth)
}

fn generic_series(ctx: &Ctx) -> TruncatedWeightModule {
    let r = ctx.cfg.window_radius;
    TruncatedWeightModule::intermediate_series(q(1, 2), q(1, 3), -r, r)
}

fn modules_verma_dims(ctx: &Ctx) -> Outcome {
    let depth = ctx.cfg.verma_depth;
    let m = generic_verma(ctx, depth);
    let dims: Result<Vec<usize>, _> = (0..=depth as i64)
        .map(|n| m.basis_at(&(q(1, 3) - z(n))).map(|b| b.len()))
        .collect();
    match dims {
        Ok(d) => Outcome {
            value: Value::Dims(d),
            note: Some(format!("levels 0..={depth}")),
        },
        Err(e) => Outcome::text(format!("error: {e}")),
    }
}

fn modules_series_dims(ctx: &Ctx) -> Outcome {
    let m = generic_series(ctx);
    let r = ctx.cfg.window_radius;
    let dims = m.weight_dims();
    let failure = (-r..=r).find_map(|k| {
        let w = q(1, 2) + z(k);
        let d = dims.get(&w).copied().unwrap_or(0);
        (d != 1).then(|| format!("dim at weight {w} is {d}"))
    });
    let failure = failure.or_else(|| {
        (dims.len() != (2 * r + 1) as usize).then(|| format!("{} weight spaces", dims.len()))
    });
    Outcome::verdict(failure)
}

fn modules_e0_diagonal(ctx: &Ctx) -> Outcome {
    let mods = [generic_verma(ctx, 6), generic_series(ctx)];
    Outcome::verdict(mods.iter().find_map(|m| m.cartan_defect()))
}

fn modules_action_compat(ctx: &Ctx) -> Outcome {
    let r = ctx.cfg.window_radius;
    let mods = [
        generic_verma(ctx, 5),
        TruncatedWeightModule::verma_with(ctx.alg.clone(), z(0), z(0), 5),
        generic_series(ctx),
        TruncatedWeightModule::intermediate_series(z(0), z(1), -r, r),
    ];
    let mut compared = 0;
    for m in &mods {
        let (n, failure) = m.bracket_compatibility(-2..=2);
        compared += n;
        if let Some(f) = failure {
            return Outcome::text(f);
        }
    }
    Outcome::text("ok").with_note(format!("{compared} comparisons, indices in [-2, 2]"))
}

fn modules_detectors(ctx: &Ctx) -> Outcome {
    let check = || -> Result<Option<String>, crate::modules::ModuleError> {
        let m = generic_verma(ctx, 4);
        let hw = m.highest_weight_vector().expect("Verma module");
        if !m.hw_detector(&hw)? || m.lw_detector(&hw)? {
            return Ok(Some("highest weight vector misclassified".into()));
        }
        for (h, singular) in [(z(0), true), (z(1), false)] {
            let m = TruncatedWeightModule::verma_with(ctx.alg.clone(), h.clone(), z(0), 4);
            let hw = m.highest_weight_vector().expect("Verma module");
            let v = m.act(Generator::E(-1), &hw)?;
            if m.hw_detector(&v)? != singular {
                return Ok(Some(format!("e(-1)v at h={h}: expected singular={singular}")));
            }
        }
        let s = generic_series(ctx);
        let r = ctx.cfg.window_radius;
        for k in (2 - r)..=(r - 2) {
            let v = WeightVector::basis(q(1, 2) + z(k), BasisLabel::Series(k));
            if s.hw_detector(&v)? || s.lw_detector(&v)? {
                return Ok(Some(format!("v({k}) of the generic series is extremal")));
            }
        }
        Ok(None)
    };
    match check() {
        Ok(failure) => Outcome::verdict(failure),
        Err(e) => Outcome::text(format!("error: {e}")),
    }
}

fn modules_level1_singular(ctx: &Ctx) -> Outcome {
    let hs = [z(0), z(1), z(-1), q(1, 2), z(2), q(-3, 7)];
    let mut parts = Vec::new();
    for h in hs {
        let m = TruncatedWeightModule::verma_with(ctx.alg.clone(), h.clone(), z(0), 4);
        match m.kernel(&(h.clone() - z(1)), &[Generator::E(1), Generator::E(2)]) {
            Ok(k) => parts.push(format!("h={h}: {}", k.len())),
            Err(e) => return Outcome::text(format!("error: {e}")),
        }
    }
    Outcome::text(parts.join(", ")).with_note("kernel dimension of {e(1), e(2)} at level 1")
}

fn series_vector(v: &WeightVector) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = v
        .coords()
        .iter()
        .map(|(l, s)| {
            let label = match l {
                BasisLabel::Series(k) => format!("v({k})"),
                other => other.to_string(),
            };
            if s.is_one() {
                label
            } else if (-s.clone()).is_one() {
                format!("-{label}")
            } else {
                format!("{s}*{label}")
            }
        })
        .collect();
    terms.join(" + ")
}

fn modules_pairs_series(_ctx: &Ctx) -> Outcome {
    let s = TruncatedWeightModule::intermediate_series(z(0), z(1), -5, 5);
    let pairs = match s.extremal_pair_search(&z(0)) {
        Ok(p) => p,
        Err(e) => return Outcome::text(format!("error: {e}")),
    };
    let mut parts = vec![format!("{} pair{}", pairs.len(), if pairs.len() == 1 { "" } else { "s" })];
    for p in &pairs {
        let mut desc = format!("tau={}; y={}; x={}", p.tau, series_vector(&p.y), series_vector(&p.x));
        if !s.check_extremal_pair(p).unwrap_or(false) {
            desc.push_str(" (relations fail)");
        }
        parts.push(desc);
    }
    Outcome::text(parts.join("; ")).with_note("intermediate series a=0, b=1, window [-5, 5], mu=0")
}

fn modules_pairs_generic(ctx: &Ctx) -> Outcome {
    let series = TruncatedWeightModule::intermediate_series(q(1, 2), q(1, 3), -5, 5);
    let verma = TruncatedWeightModule::verma_with(ctx.alg.clone(), q(2, 3), q(1, 2), 6);
    let mut total = 0;
    let searches = (-3..=3)
        .map(|k| (&series, q(1, 2) + z(k)))
        .chain((0..=5).map(|n| (&verma, q(2, 3) - z(n))));
    for (m, mu) in searches {
        match m.extremal_pair_search(&mu) {
            Ok(p) => total += p.len(),
            Err(e) => return Outcome::text(format!("error: {e}")),
        }
    }
    Outcome::text(format!("{total} pairs"))
        .with_note("series a=1/2, b=1/3 at mu=1/2+k, |k|<=3; Verma h=2/3, c=1/2 at mu=h-n, n<=5")
}

// ---------------------------------------------------------------------------
// PBW engine properties

fn orders() -> Vec<OrderSpec> {
    vec![
        OrderSpec::asc(),
        OrderSpec::desc(),
        OrderSpec::ann(1),
        OrderSpec::ann(-1),
        OrderSpec::ann(2),
        OrderSpec::ann(-2),
        OrderSpec::new(BaseOrder::Descending, vec![3, -1]).expect("valid order"),
    ]
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize, span: i64) -> Vec<Generator> {
    let n = rng.gen_range(1..=max_len);
    (0..n)
        .map(|_| {
            if rng.gen_ratio(1, 10) {
                Generator::C
            } else {
                Generator::E(rng.gen_range(-span..=span))
            }
        })
        .collect()
}

fn random_element(ctx: &Ctx, rng: &mut ChaCha8Rng, order: &OrderSpec) -> UEAElement {
    let n = rng.gen_range(1..=3);
    let words: Vec<(Vec<i64>, u32, Rational)> = (0..n)
        .map(|_| {
            let len = rng.gen_range(0..=3);
            let w: Vec<i64> = (0..len).map(|_| rng.gen_range(-3..=3)).collect();
            (w, rng.gen_range(0..=1), q(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
        })
        .collect();
    ctx.alg.normalize_words(words, order)
}

fn show_word(w: &[Generator]) -> String {
    w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("*")
}

fn pbw_confluence(ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng();
    let orders = orders();
    let failure = (0..200).find_map(|_| {
        let w = random_word(&mut rng, 6, 4);
        let o = orders.choose(&mut rng).expect("nonempty");
        let a = ctx.alg.normal_form(&w, o);
        let mut strategy = RandomSwap::new(ChaCha8Rng::seed_from_u64(rng.gen()));
        let b = ctx.alg.normal_form_with(&w, o, &mut strategy);
        (a != b).then(|| format!("{} under {o}: {a} vs {b}", show_word(&w)))
    });
    Outcome::verdict(failure).with_note("200 random words of length <= 6")
}

fn pbw_associativity(ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng();
    let orders = orders();
    let failure = (0..100).find_map(|_| {
        let o = orders.choose(&mut rng).expect("nonempty").clone();
        let (u, v, w) = (
            random_element(ctx, &mut rng, &o),
            random_element(ctx, &mut rng, &o),
            random_element(ctx, &mut rng, &o),
        );
        let left = ctx.alg.multiply(&ctx.alg.multiply(&u, &v, &o), &w, &o);
        let right = ctx.alg.multiply(&u, &ctx.alg.multiply(&v, &w, &o), &o);
        (left != right).then(|| format!("({u})({v})({w}) under {o}: {left} vs {right}"))
    });
    Outcome::verdict(failure).with_note("100 random triples")
}

fn pbw_order_round_trip(ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng();
    let orders = orders();
    let failure = (0..100).find_map(|_| {
        let from = orders.choose(&mut rng).expect("nonempty").clone();
        let to = orders.choose(&mut rng).expect("nonempty").clone();
        let u = random_element(ctx, &mut rng, &from);
        let back = ctx.alg.change_order(&ctx.alg.change_order(&u, &to), &from);
        (back != u).then(|| format!("{u}: {from} -> {to} -> {from} gives {back}"))
    });
    Outcome::verdict(failure).with_note("100 random elements")
}

fn pbw_ideal_soundness(ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng();
    let asc = OrderSpec::asc();
    let mut failure = None;
    'outer: for _ in 0..100 {
        let u = random_element(ctx, &mut rng, &asc);
        for g in [-2, -1, 1, 2] {
            let ueg = ctx.alg.multiply(&u, &UEAElement::generator(Generator::E(g), asc.clone()), &asc);
            match ctx.alg.reduce_mod_left_ideal(&ueg, g) {
                Ok(r) if r.is_zero() => {}
                Ok(r) => {
                    failure = Some(format!("({u})*e({g}) reduces to {r}"));
                    break 'outer;
                }
                Err(e) => {
                    failure = Some(format!("error: {e}"));
                    break 'outer;
                }
            }
        }
    }
    Outcome::verdict(failure).with_note("100 random elements, g in {-2, -1, 1, 2}")
}

fn pbw_grading(ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng();
    let orders = orders();
    let failure = (0..100).find_map(|_| {
        let w = random_word(&mut rng, 6, 4);
        let o = orders.choose(&mut rng).expect("nonempty");
        let deg: i64 = w.iter().map(|g| g.degree()).sum();
        let nf = ctx.alg.normal_form(&w, o);
        let bad = nf.terms().find(|(m, _)| m.degree() != deg).map(|(m, _)| m.to_string());
        bad.map(|m| format!("{} has degree {deg} but produces {m}", show_word(&w)))
    });
    Outcome::verdict(failure).with_note("100 random words")
}

fn pbw_idempotence(ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng();
    let orders = orders();
    let failure = (0..100).find_map(|_| {
        let w = random_word(&mut rng, 6, 4);
        let o = orders.choose(&mut rng).expect("nonempty");
        let nf = ctx.alg.normal_form(&w, o);
        let again = ctx.alg.renormalize(&nf, o, &mut pbw::Leftmost);
        (again != nf).then(|| format!("{} under {o}: {nf} renormalizes to {again}", show_word(&w)))
    });
    Outcome::verdict(failure).with_note("100 random words")
}

fn pbw_involution(ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng();
    let asc = OrderSpec::asc();
    let failure = (0..100).find_map(|_| {
        let u = random_element(ctx, &mut rng, &asc);
        let v = random_element(ctx, &mut rng, &asc);
        let lhs = ctx.alg.involution_uea(&ctx.alg.multiply(&u, &v, &asc));
        let rhs = ctx
            .alg
            .multiply(&ctx.alg.involution_uea(&u), &ctx.alg.involution_uea(&v), &asc);
        if lhs != rhs {
            return Some(format!("theta(({u})({v})) = {lhs} but theta(u)theta(v) = {rhs}"));
        }
        let twice = ctx.alg.involution_uea(&ctx.alg.involution_uea(&u));
        (twice != u).then(|| format!("theta^2({u}) = {twice}"))
    });
    Outcome::verdict(failure).with_note("100 random pairs")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_recurrence() {
        assert_eq!(partition_counts(13), vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
    }

    #[test]
    fn embedded_file_covers_every_check() {
        let e = Expected::embedded();
        for name in check_names() {
            assert!(e.get(name).is_some(), "{name}");
        }
    }

    #[test]
    fn registry_names_are_unique() {
        let mut names: Vec<_> = check_names().collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), REGISTRY.len());
    }

    #[test]
    fn config_bounds() {
        let ok = RunConfig::default();
        assert!(ok.validate().is_ok());
        for bad in [
            RunConfig { verma_depth: 13, ..RunConfig::default() },
            RunConfig { window_radius: 21, ..RunConfig::default() },
            RunConfig { window_radius: 1, ..RunConfig::default() },
            RunConfig { fact_range: 51, ..RunConfig::default() },
            RunConfig { fact_range: 2, ..RunConfig::default() },
            RunConfig {
                perturbations: vec![Perturbation::Structure { i: 2, j: 2, delta: z(1) }],
                ..RunConfig::default()
            },
            RunConfig {
                perturbations: vec![Perturbation::Central { i: 0, delta: z(1) }],
                ..RunConfig::default()
            },
        ] {
            assert!(matches!(bad.validate(), Err(SuiteError::Config(_))), "{bad:?}");
        }
    }

    #[test]
    fn dims_extend_past_pinned_list() {
        let (d, note) = expected_dims("1, 1, 2", 5).unwrap();
        assert_eq!(d, vec![1, 1, 2, 3, 5]);
        assert!(note.is_some());
        let (d, note) = expected_dims("1, 1, 2", 1).unwrap();
        assert_eq!(d, vec![1]);
        assert!(note.is_none());
    }
}
