//! Command-line frontend. [`run`] returns the process exit code:
//! 0 on success, 1 when a verification reports a failure, 2 on usage,
//! parse or boundary errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::dsl::{self, DslError};
use crate::modules::ModuleError;
use crate::pbw::{self, OrderSpec};
use crate::scalar::{parse_rational, rational_to_fraction_string};
use crate::suite::{self, Expected, Perturbation, RunConfig};
use crate::{Generator, Rational, TruncatedWeightModule, UEAElement, WeightVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "virasoro", version, about = "Exact computations in the Virasoro algebra and its enveloping algebra")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the identity checks against the pinned expected values.
    Verify(VerifyArgs),
    /// Normal form of an expression.
    Nf {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// asc, desc, hw, ann:<g> or asc>i>j...
        #[arg(long, default_value = "asc")]
        order: OrderSpec,
    },
    /// Canonical representative modulo the left ideal U(V)e(g).
    Reduce {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        ann: i64,
    },
    /// Product of two expressions in normal form.
    Mul {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
        #[arg(long, default_value = "asc")]
        order: OrderSpec,
    },
    /// Rational roots of a polynomial in e(0).
    Roots {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Truncated Verma module queries.
    Verma(VermaArgs),
    /// Truncated intermediate-series module queries.
    Interm(IntermArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run only this check, or every check of a group such as `cubic`.
    #[arg(long)]
    pub only: Vec<String>,
    /// Upper end of the index range for the bracket facts.
    #[arg(long, default_value_t = 10)]
    pub range: i64,
    /// Depth of the Verma truncation in the dimension check.
    #[arg(long, default_value_t = 10)]
    pub depth: u32,
    /// Intermediate-series windows are [-window, window].
    #[arg(long, default_value_t = 10)]
    pub window: i64,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Add delta to the e(i+j) coefficient of [e(i),e(j)]: `i,j,delta`.
    #[arg(long, value_parser = parse_structure, allow_hyphen_values = true)]
    pub perturb: Vec<Perturbation>,
    /// Add delta to the c coefficient of [e(i),e(-i)]: `i,delta`.
    #[arg(long, value_parser = parse_central, allow_hyphen_values = true)]
    pub perturb_central: Vec<Perturbation>,
    /// Expected-value file (default: $VIRASORO_EXPECTED_DIR/expected.toml,
    /// then expected.toml beside the executable, then the built-in copy).
    #[arg(long)]
    pub expected: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VermaArgs {
    /// Highest weight.
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub h: Rational,
    /// Central charge.
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub c: Rational,
    #[arg(long, default_value_t = 8)]
    pub depth: u32,
    /// Print the weight-space dimensions.
    #[arg(long)]
    pub dims: bool,
    /// Basis of the vectors killed by e(1) and e(2) at --weight.
    #[arg(long, requires = "weight")]
    pub singular: bool,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub weight: Option<Rational>,
}

#[derive(Args, Debug)]
pub struct IntermArgs {
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub a: Rational,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub b: Rational,
    #[arg(long, default_value_t = -10, allow_hyphen_values = true)]
    pub min: i64,
    #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
    pub max: i64,
    /// Print the weight-space dimensions.
    #[arg(long)]
    pub dims: bool,
    /// Check that the action respects brackets and that e(0) is diagonal.
    #[arg(long)]
    pub check: bool,
    /// Search for solutions of e(1)x = 0, e(-1)y = 0, x = e(-2)y, e(2)x = tau y.
    #[arg(long, requires = "mu")]
    pub pairs: bool,
    /// y is sought at weight mu + 1 and x at weight mu - 1.
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub mu: Option<Rational>,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_structure(s: &str) -> Result<Perturbation, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [i, j, d] = parts.as_slice() else {
        return Err(format!("expected i,j,delta, got {s:?}"));
    };
    Ok(Perturbation::Structure {
        i: i.parse().map_err(|_| format!("bad index {i:?}"))?,
        j: j.parse().map_err(|_| format!("bad index {j:?}"))?,
        delta: rational_arg(d)?,
    })
}

fn parse_central(s: &str) -> Result<Perturbation, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [i, d] = parts.as_slice() else {
        return Err(format!("expected i,delta, got {s:?}"));
    };
    Ok(Perturbation::Central {
        i: i.parse().map_err(|_| format!("bad index {i:?}"))?,
        delta: rational_arg(d)?,
    })
}

/// A failure that maps to an exit code and a message on the error stream.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

impl From<ModuleError> for Failure {
    fn from(e: ModuleError) -> Self {
        usage(e.to_string())
    }
}

impl From<pbw::PbwError> for Failure {
    fn from(e: pbw::PbwError) -> Self {
        usage(e.to_string())
    }
}

impl From<suite::SuiteError> for Failure {
    fn from(e: suite::SuiteError) -> Self {
        usage(e.to_string())
    }
}

/// Output collected by a command: text lines or a JSON document, and the exit code.
struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            code: EXIT_OK,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let stream: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(stream, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(o) => {
            let written = if cli.json {
                writeln!(out, "{}", o.json)
            } else {
                write!(out, "{}", o.text)
            };
            if written.is_err() {
                return EXIT_FAILURE;
            }
            o.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Verify(a) => verify(a),
        Command::Nf { expr, order } => {
            let u = element(expr, order)?;
            Ok(element_output(&u))
        }
        Command::Reduce { expr, ann } => {
            let u = element(expr, &OrderSpec::asc())?;
            Ok(element_output(&pbw::reduce_mod_left_ideal(&u, *ann)?))
        }
        Command::Mul { left, right, order } => {
            let u = element(left, order)?;
            let v = element(right, order)?;
            Ok(element_output(&pbw::multiply(&u, &v, order)))
        }
        Command::Roots { expr } => {
            let u = element(expr, &OrderSpec::asc())?;
            let mut roots = pbw::rational_roots(&pbw::cartan_polynomial(&u)?)?;
            roots.sort();
            let text: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
            Ok(Output::ok(
                format!("{{{}}}\n", text.join(", ")),
                json!({ "roots": roots.iter().map(rational_to_fraction_string).collect::<Vec<_>>() }),
            ))
        }
        Command::Verma(a) => verma(a),
        Command::Interm(a) => interm(a),
    }
}

fn element(text: &str, order: &OrderSpec) -> Result<UEAElement, Failure> {
    dsl::parse_element(text, order).map_err(|e| match e {
        DslError::Parse(se) => usage(format!(
            "{se}\n  {}\n  {}^",
            text.lines().nth(se.line - 1).unwrap_or(""),
            " ".repeat(se.column - 1)
        )),
        DslError::Eval(ev) => usage(ev.to_string()),
    })
}

fn element_output(u: &UEAElement) -> Output {
    Output::ok(format!("{}\n", dsl::format(u)), dsl::to_value(u))
}

fn verify(a: &VerifyArgs) -> Result<Output, Failure> {
    let cfg = RunConfig {
        verma_depth: a.depth,
        window_radius: a.window,
        fact_range: a.range,
        seed: a.seed,
        only: a.only.clone(),
        perturbations: a.perturb.iter().chain(&a.perturb_central).cloned().collect(),
    };
    let expected = Expected::locate(a.expected.as_deref())?;
    let report = suite::run_all(&cfg, &expected)?;
    Ok(Output {
        text: report.render_text(),
        json: serde_json::to_value(&report).expect("report serializes"),
        code: if report.all_passed() { EXIT_OK } else { EXIT_FAILURE },
    })
}

fn frac(q: &Rational) -> String {
    rational_to_fraction_string(q)
}

fn vector_json(v: &WeightVector) -> Value {
    let coords: Vec<Value> = v
        .coords()
        .iter()
        .map(|(l, s)| json!({ "label": l.to_string(), "coeff": frac(s) }))
        .collect();
    json!({ "weight": frac(v.weight()), "coords": coords })
}

fn dims_output(m: &TruncatedWeightModule, text: &mut String) -> Value {
    let dims = m.weight_dims();
    let mut rows = Vec::new();
    // highest weights first
    for (w, d) in dims.iter().rev() {
        text.push_str(&format!("weight {w}: {d}\n"));
        rows.push(json!({ "weight": frac(w), "dim": d }));
    }
    Value::Array(rows)
}

fn verma(a: &VermaArgs) -> Result<Output, Failure> {
    if a.depth > suite::MAX_VERMA_DEPTH {
        return Err(usage(format!("depth {} exceeds {}", a.depth, suite::MAX_VERMA_DEPTH)));
    }
    let m = TruncatedWeightModule::verma(a.h.clone(), a.c.clone(), a.depth);
    let mut text = format!("Verma module h={} c={} depth={}\n", a.h, a.c, a.depth);
    let mut doc = json!({
        "family": "verma",
        "h": frac(&a.h),
        "c": frac(&a.c),
        "depth": a.depth,
    });
    if a.dims || !a.singular {
        doc["dims"] = dims_output(&m, &mut text);
    }
    if let Some(w) = a.weight.as_ref().filter(|_| a.singular) {
        let kernel = m.kernel(w, &[Generator::E(1), Generator::E(2)])?;
        text.push_str(&format!("vectors killed by e(1), e(2) at weight {w}: {}\n", kernel.len()));
        for v in &kernel {
            text.push_str(&format!("  {v}\n"));
        }
        doc["singular"] = Value::Array(kernel.iter().map(vector_json).collect());
    }
    Ok(Output::ok(text, doc))
}

fn interm(a: &IntermArgs) -> Result<Output, Failure> {
    let radius = a.min.unsigned_abs().max(a.max.unsigned_abs());
    if radius > suite::MAX_WINDOW_RADIUS as u64 {
        return Err(usage(format!(
            "window [{}, {}] exceeds radius {}",
            a.min,
            a.max,
            suite::MAX_WINDOW_RADIUS
        )));
    }
    let m = TruncatedWeightModule::intermediate_series(a.a.clone(), a.b.clone(), a.min, a.max);
    let mut text = format!(
        "intermediate series a={} b={} window [{}, {}]\n",
        a.a, a.b, a.min, a.max
    );
    let mut doc = json!({
        "family": "intermediate_series",
        "a": frac(&a.a),
        "b": frac(&a.b),
        "min": a.min,
        "max": a.max,
    });
    let mut code = EXIT_OK;
    if a.dims || !(a.check || a.pairs) {
        doc["dims"] = dims_output(&m, &mut text);
    }
    if a.check {
        let (compared, failure) = m.bracket_compatibility(-2..=2);
        let failure = failure.or_else(|| m.cartan_defect());
        match &failure {
            None => text.push_str(&format!("check passed ({compared} bracket comparisons)\n")),
            Some(f) => text.push_str(&format!("check failed: {f}\n")),
        }
        if failure.is_some() {
            code = EXIT_FAILURE;
        }
        doc["check"] = json!({ "passed": failure.is_none(), "comparisons": compared, "failure": failure });
    }
    if let Some(mu) = a.mu.as_ref().filter(|_| a.pairs) {
        let pairs = m.extremal_pair_search(mu)?;
        text.push_str(&format!("solutions at mu={mu}: {}\n", pairs.len()));
        let mut rows = Vec::new();
        for p in &pairs {
            text.push_str(&format!("  tau={}  y={}  x={}\n", p.tau, p.y, p.x));
            rows.push(json!({ "tau": frac(&p.tau), "y": vector_json(&p.y), "x": vector_json(&p.x) }));
        }
        doc["pairs"] = Value::Array(rows);
    }
    Ok(Output {
        text,
        json: doc,
        code,
    })
}
