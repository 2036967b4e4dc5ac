//! Command-line front end: JSON problem files in, reports out.
//!
//! Exit codes: 0 feasible / holds, 1 infeasible / violated, 2 input error,
//! 3 numerical failure. Reports go to standard output (or `--out`);
//! diagnostics go to standard error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::channel::KrausSet;
use crate::error::Error;
use crate::linalg::{C64, PSD_TOL};
use crate::majorize::{self, SpectrumVector, MAJORIZATION_TOL};
use crate::selftest;
use crate::states::{DensityOperator, Ensemble, PureStateSet};
use crate::transform::{self, PiMatrix, SearchOptions, TransformProblem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "pureset", version, about = "Feasibility and construction of transformations between pure-state sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Numerical tolerance for eigenvalue and defect tests.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Root seed for randomized steps.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Include wall-clock time in the report (breaks byte-for-byte reproducibility).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a transformation exists and report a certificate.
    Feasible { input: PathBuf },
    /// Check a supplied certificate `pi` against the three conditions.
    VerifyPi { input: PathBuf },
    /// Build Kraus operators realizing a feasible transformation.
    Kraus { input: PathBuf },
    /// Unambiguous discrimination: check probabilities or report the uniform optimum.
    Usd {
        input: PathBuf,
        #[arg(long)]
        max_uniform: bool,
    },
    /// Deterministic transformation via the closed-form certificate.
    Det { input: PathBuf },
    /// Apply a channel to a state and report outcome probabilities.
    Simulate { input: PathBuf },
    /// Test whether a channel is unital.
    Unital { input: PathBuf },
    /// Transfer matrix between input and output eigenbases.
    Transfer { input: PathBuf },
    /// Test `sigma ≺ lambda` and optionally build a doubly stochastic witness.
    Majorize { input: PathBuf },
    /// Ensemble spectra before and after a deterministic transformation.
    Theorem3 { input: PathBuf },
    /// Partial eigenvalue sums of an ensemble density operator.
    Monotones { input: PathBuf },
    /// Run the randomized property suite.
    Selftest {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Re-run one property (`module/name`) on the seed given by `--seed`.
        #[arg(long)]
        replay: Option<String>,
    },
}

/// Parsed problem file.
#[derive(Clone, Debug, Deserialize)]
pub struct ProblemFile {
    pub version: u32,
    #[serde(flatten)]
    pub problem: Problem,
    #[serde(default)]
    pub tolerances: Option<Tolerances>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, Serialize)]
pub struct Tolerances {
    pub tol: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Problem {
    Transform {
        initial: PureStateSet,
        #[serde(rename = "final")]
        targets: PureStateSet,
        probabilities: Vec<f64>,
        #[serde(default)]
        pi: Option<PiMatrix>,
    },
    Usd {
        states: PureStateSet,
        #[serde(default)]
        probabilities: Option<Vec<f64>>,
    },
    Deterministic {
        initial: PureStateSet,
        #[serde(rename = "final")]
        targets: PureStateSet,
        #[serde(default)]
        pi: Option<PiMatrix>,
    },
    Channel {
        kraus: KrausSet,
        #[serde(default)]
        rho: Option<DensityOperator>,
        #[serde(default)]
        state: Option<Vec<C64>>,
    },
    Majorize {
        lambda: Vec<f64>,
        sigma: Vec<f64>,
        #[serde(default)]
        witness: bool,
    },
    Theorem3 {
        initial: PureStateSet,
        #[serde(rename = "final")]
        targets: PureStateSet,
        #[serde(default)]
        priors: Option<Vec<f64>>,
    },
    Monotones {
        states: PureStateSet,
        #[serde(default)]
        priors: Option<Vec<f64>>,
        #[serde(default)]
        k: Option<usize>,
    },
}

impl Problem {
    fn kind(&self) -> &'static str {
        match self {
            Problem::Transform { .. } => "transform",
            Problem::Usd { .. } => "usd",
            Problem::Deterministic { .. } => "deterministic",
            Problem::Channel { .. } => "channel",
            Problem::Majorize { .. } => "majorize",
            Problem::Theorem3 { .. } => "theorem3",
            Problem::Monotones { .. } => "monotones",
        }
    }
}

/// Envelope shared by every command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub command: String,
    /// `feasible`, `infeasible`, `holds`, `violated`, `inconclusive` or `ok`.
    pub verdict: String,
    pub exit_code: i32,
    pub tol: f64,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

/// Failure before a report could be produced.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_INPUT };
        Self { code, message: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parse arguments, run, and write output. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    let started = std::time::Instant::now();
    match execute(&cli) {
        Ok(mut report) => {
            if cli.timing {
                report.elapsed_ms = Some(started.elapsed().as_secs_f64() * 1e3);
            }
            let text = if cli.json {
                let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
                s.push('\n');
                s
            } else {
                render_text(&report)
            };
            let written = match &cli.out {
                Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(msg) = written {
                let _ = writeln!(stderr, "error: {msg}");
                return EXIT_INPUT;
            }
            report.exit_code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

fn load(path: &PathBuf) -> CliResult<ProblemFile> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let file: ProblemFile =
        serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    if file.version != FORMAT_VERSION {
        return Err(CliError::input(format!("unsupported version {} (expected {FORMAT_VERSION})", file.version)));
    }
    Ok(file)
}

fn wrong_kind(command: &str, kind: &str) -> CliError {
    CliError::input(format!("`{command}` does not accept problems of kind `{kind}`"))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

struct Ctx {
    tol: f64,
    seed: u64,
}

fn report(command: &str, ctx: &Ctx, positive: bool, yes: &str, no: &str, result: Value) -> Report {
    Report {
        version: FORMAT_VERSION,
        command: command.into(),
        verdict: if positive { yes } else { no }.into(),
        exit_code: if positive { EXIT_OK } else { EXIT_NEGATIVE },
        tol: ctx.tol,
        result,
        elapsed_ms: None,
    }
}

/// Run a parsed command and build its report.
pub fn execute(cli: &Cli) -> CliResult<Report> {
    if let Command::Selftest { trials, replay } = &cli.command {
        let ctx = Ctx { tol: cli.tol.unwrap_or(PSD_TOL), seed: cli.seed.unwrap_or(selftest::DEFAULT_SEED) };
        return run_selftest(&ctx, *trials, replay.as_deref());
    }
    let input = match &cli.command {
        Command::Feasible { input }
        | Command::VerifyPi { input }
        | Command::Kraus { input }
        | Command::Usd { input, .. }
        | Command::Det { input }
        | Command::Simulate { input }
        | Command::Unital { input }
        | Command::Transfer { input }
        | Command::Majorize { input }
        | Command::Theorem3 { input }
        | Command::Monotones { input } => input,
        Command::Selftest { .. } => unreachable!(),
    };
    let file = load(input)?;
    let tol = cli
        .tol
        .or(file.tolerances.and_then(|t| t.tol))
        .unwrap_or(PSD_TOL);
    if !(tol >= 0.0) || !tol.is_finite() {
        return Err(CliError::input(format!("tolerance must be a non-negative number, got {tol}")));
    }
    let ctx = Ctx { tol, seed: cli.seed.or(file.seed).unwrap_or(selftest::DEFAULT_SEED) };
    let p = &file.problem;
    match &cli.command {
        Command::Feasible { .. } => cmd_feasible(&ctx, p),
        Command::VerifyPi { .. } => cmd_verify(&ctx, p),
        Command::Kraus { .. } => cmd_kraus(&ctx, p),
        Command::Usd { max_uniform, .. } => cmd_usd(&ctx, p, *max_uniform),
        Command::Det { .. } => cmd_det(&ctx, p),
        Command::Simulate { .. } => cmd_simulate(&ctx, p),
        Command::Unital { .. } => cmd_unital(&ctx, p),
        Command::Transfer { .. } => cmd_transfer(&ctx, p),
        Command::Majorize { .. } => cmd_majorize(&ctx, p),
        Command::Theorem3 { .. } => cmd_theorem3(&ctx, p),
        Command::Monotones { .. } => cmd_monotones(&ctx, p),
        Command::Selftest { .. } => unreachable!(),
    }
}

/// Problem plus any certificate supplied in the file.
fn transform_problem(command: &str, p: &Problem) -> CliResult<(TransformProblem, Option<PiMatrix>)> {
    match p {
        Problem::Transform { initial, targets, probabilities, pi } => {
            Ok((TransformProblem::new(initial.clone(), targets.clone(), probabilities.clone())?, pi.clone()))
        }
        Problem::Deterministic { initial, targets, pi } => {
            Ok((TransformProblem::deterministic(initial.clone(), targets.clone())?, pi.clone()))
        }
        Problem::Usd { states, probabilities: Some(prob) } => {
            Ok((TransformProblem::discrimination(states.clone(), prob.clone())?, None))
        }
        Problem::Usd { probabilities: None, .. } => {
            Err(CliError::input(format!("`{command}` on a usd problem needs `probabilities`; `usd --max-uniform` reports the best uniform rate")))
        }
        other => Err(wrong_kind(command, other.kind())),
    }
}

/// Closed forms first, then the search, then a seeded rank-one phase search.
fn find_certificate(ctx: &Ctx, prob: &TransformProblem) -> CliResult<(Option<transform::Certificate>, Value)> {
    if prob.is_deterministic() {
        let cert = transform::deterministic_pi(prob, ctx.tol)?;
        if cert.feasible {
            return Ok((Some(cert), json!({ "method": "deterministic_closed_form" })));
        }
        let info = json!({ "method": "deterministic_closed_form", "rejected_candidate": to_value(&cert) });
        return Ok((None, info));
    }
    let options = SearchOptions { tol: ctx.tol, ..SearchOptions::default() };
    let out = transform::pi_search(prob, &options)?;
    if let Some(cert) = out.certificate {
        return Ok((Some(cert), json!({ "method": "search", "iterations": out.iterations, "residual": out.residual })));
    }
    let phased = transform::rank_one_phase_search(prob, 200, ctx.seed, ctx.tol)?;
    let info = json!({
        "method": "search",
        "iterations": out.iterations,
        "residual": out.residual,
        "phase_search_seed": ctx.seed,
    });
    Ok((phased.certificate.feasible.then_some(phased.certificate), info))
}

fn merge(a: Value, b: Value) -> Value {
    let mut m: Map<String, Value> = match a {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    if let Value::Object(extra) = b {
        m.extend(extra);
    }
    Value::Object(m)
}

fn cmd_feasible(ctx: &Ctx, p: &Problem) -> CliResult<Report> {
    if let Problem::Usd { states, probabilities: Some(prob) } = p {
        let cert = transform::usd_feasible(states, prob, ctx.tol)?;
        return Ok(report("feasible", ctx, cert.feasible, "feasible", "infeasible", json!({ "certificate": to_value(&cert) })));
    }
    let (prob, supplied) = transform_problem("feasible", p)?;
    if let Some(pi) = supplied {
        let cert = transform::verify_pi(&prob, &pi, ctx.tol)?;
        if cert.feasible {
            return Ok(report("feasible", ctx, true, "feasible", "", json!({ "method": "supplied", "certificate": to_value(&cert) })));
        }
    }
    let (cert, info) = find_certificate(ctx, &prob)?;
    match cert {
        Some(c) => Ok(report("feasible", ctx, true, "feasible", "", merge(info, json!({ "certificate": to_value(&c) })))),
        None => {
            let conclusive = prob.is_deterministic();
            let mut r = report(
                "feasible",
                ctx,
                false,
                "",
                if conclusive { "infeasible" } else { "inconclusive" },
                merge(info, json!({ "conclusive": conclusive })),
            );
            r.exit_code = EXIT_NEGATIVE;
            Ok(r)
        }
    }
}

fn cmd_verify(ctx: &Ctx, p: &Problem) -> CliResult<Report> {
    let (prob, pi) = transform_problem("verify-pi", p)?;
    let pi = pi.ok_or_else(|| CliError::input("`verify-pi` needs a `pi` matrix in the problem file"))?;
    let cert = transform::verify_pi(&prob, &pi, ctx.tol)?;
    let failure = cert.first_failure();
    Ok(report(
        "verify-pi",
        ctx,
        cert.feasible,
        "feasible",
        "infeasible",
        json!({ "certificate": to_value(&cert), "first_failure": failure }),
    ))
}

fn cmd_kraus(ctx: &Ctx, p: &Problem) -> CliResult<Report> {
    let (prob, supplied) = transform_problem("kraus", p)?;
    let cert = match supplied {
        Some(pi) => {
            let c = transform::verify_pi(&prob, &pi, ctx.tol)?;
            c.feasible.then_some(c)
        }
        None => find_certificate(ctx, &prob)?.0,
    };
    let Some(cert) = cert else {
        return Ok(report("kraus", ctx, false, "", "infeasible", json!({ "reason": "no certificate passes the conditions" })));
    };
    let real = transform::kraus_from_pi(&prob, &cert.pi, ctx.tol)?;
    let set = real.kraus_set();
    let tp = set.is_trace_preserving(ctx.tol.max(1e-9));
    let mut per_state = Vec::new();
    for j in 0..prob.len() {
        let rho = DensityOperator::pure(prob.initial().state(j))?;
        let ps = set.outcome_probability(transform::SUCCESS_LABEL, &rho)?;
        per_state.push(json!({ "index": j, "target_probability": prob.probabilities()[j], "success_probability": ps }));
    }
    Ok(report(
        "kraus",
        ctx,
        true,
        "feasible",
        "",
        json!({
            "certificate": to_value(&cert),
            "kraus": to_value(&set),
            "trace_preserving": to_value(&tp),
            "states": per_state,
        }),
    ))
}

fn cmd_usd(ctx: &Ctx, p: &Problem, max_uniform: bool) -> CliResult<Report> {
    let Problem::Usd { states, probabilities } = p else {
        return Err(wrong_kind("usd", p.kind()));
    };
    if max_uniform {
        let value = transform::usd_max_uniform(states)?;
        let mut r = report("usd", ctx, true, "ok", "", json!({ "max_uniform_probability": value }));
        r.verdict = "ok".into();
        return Ok(r);
    }
    let prob = probabilities
        .as_ref()
        .ok_or_else(|| CliError::input("`usd` needs `probabilities` unless --max-uniform is given"))?;
    let cert = transform::usd_feasible(states, prob, ctx.tol)?;
    Ok(report("usd", ctx, cert.feasible, "feasible", "infeasible", json!({ "certificate": to_value(&cert) })))
}

fn cmd_det(ctx: &Ctx, p: &Problem) -> CliResult<Report> {
    let (prob, _) = transform_problem("det", p)?;
    if !prob.is_deterministic() {
        return Err(CliError::input("`det` needs every probability equal to 1"));
    }
    let cert = transform::deterministic_pi(&prob, ctx.tol)?;
    let g1 = prob.initial().gram_matrix();
    let residual = g1.sub(&cert.pi.hadamard(&prob.targets().gram_matrix())?)?.frobenius_norm();
    Ok(report(
        "det",
        ctx,
        cert.feasible,
        "feasible",
        "infeasible",
        json!({ "certificate": to_value(&cert), "gram_residual": residual }),
    ))
}

fn channel_input(command: &str, p: &Problem) -> CliResult<(KrausSet, Option<DensityOperator>)> {
    let Problem::Channel { kraus, rho, state } = p else {
        return Err(wrong_kind(command, p.kind()));
    };
    let rho = match (rho, state) {
        (Some(_), Some(_)) => return Err(CliError::input("give either `rho` or `state`, not both")),
        (Some(r), None) => Some(r.clone()),
        (None, Some(s)) => Some(DensityOperator::pure(s)?),
        (None, None) => None,
    };
    Ok((kraus.clone(), rho))
}

fn cmd_simulate(ctx: &Ctx, p: &Problem) -> CliResult<Report> {
    let (kraus, rho) = channel_input("simulate", p)?;
    let rho = rho.ok_or_else(|| CliError::input("`simulate` needs `rho` or `state`"))?;
    let tp = kraus.is_trace_preserving(ctx.tol);
    let mut outcomes = Vec::new();
    for label in kraus.labels() {
        let prob = kraus.outcome_probability(label, &rho)?;
        let post = if prob > crate::linalg::ZERO_TOL {
            Some(to_value(&kraus.post_measurement_state(label, &rho)?))
        } else {
            None
        };
        outcomes.push(json!({ "label": label, "probability": prob, "post_state": post }));
    }
    let output = if tp.passed { Some(to_value(&kraus.apply_channel(&rho, ctx.tol)?)) } else { None };
    Ok(report(
        "simulate",
        ctx,
        tp.passed,
        "ok",
        "violated",
        json!({ "trace_preserving": to_value(&tp), "output": output, "outcomes": outcomes }),
    ))
}

fn cmd_unital(ctx: &Ctx, p: &Problem) -> CliResult<Report> {
    let (kraus, _) = channel_input("unital", p)?;
    let r = kraus.is_unital(ctx.tol);
    Ok(report("unital", ctx, r.passed, "holds", "violated", json!({ "unital": to_value(&r) })))
}

fn cmd_transfer(ctx: &Ctx, p: &Problem) -> CliResult<Report> {
    let (kraus, rho) = channel_input("transfer", p)?;
    let rho = rho.ok_or_else(|| CliError::input("`transfer` needs `rho` or `state`"))?;
    let s = kraus.transfer_matrix_for(&rho)?;
    let trace = s.trace_sums_verdict(ctx.tol.max(1e-9));
    let unital = s.unital_sums_verdict(ctx.tol.max(1e-9));
    let maj = majorize::majorizes_values(&s.input_spectrum, &s.output_spectrum, MAJORIZATION_TOL);
    Ok(report(
        "transfer",
        ctx,
        trace.passed,
        "holds",
        "violated",
        json!({
            "transfer": to_value(&s),
            "trace_sums": to_value(&trace),
            "unital_sums": to_value(&unital),
            "output_majorized_by_input": to_value(&maj),
        }),
    ))
}

fn cmd_majorize(ctx: &Ctx, p: &Problem) -> CliResult<Report> {
    let Problem::Majorize { lambda, sigma, witness } = p else {
        return Err(wrong_kind("majorize", p.kind()));
    };
    let l = SpectrumVector::new(lambda.clone())?;
    let s = SpectrumVector::new(sigma.clone())?;
    let r = majorize::majorizes(&l, &s, ctx.tol);
    let w = if *witness && r.holds { Some(to_value(&majorize::ds_witness(&l, &s, ctx.tol)?)) } else { None };
    Ok(report("majorize", ctx, r.holds, "holds", "violated", json!({ "majorization": to_value(&r), "witness": w })))
}

fn cmd_theorem3(ctx: &Ctx, p: &Problem) -> CliResult<Report> {
    let (initial, targets, priors) = match p {
        Problem::Theorem3 { initial, targets, priors } => (initial, targets, priors.clone()),
        Problem::Deterministic { initial, targets, .. } => (initial, targets, None),
        other => return Err(wrong_kind("theorem3", other.kind())),
    };
    let n = initial.len();
    let q = priors.unwrap_or_else(|| vec![1.0 / n as f64; n]);
    let prob = TransformProblem::deterministic(initial.clone(), targets.clone())?;
    let r = majorize::theorem3_check(&prob, &q, ctx.tol)?;
    let verdict = if !r.hypothesis_met { "hypothesis_not_met" } else if r.majorization.holds { "holds" } else { "violated" };
    let mut rep = report("theorem3", ctx, r.confirmed(), "holds", "violated", to_value(&r));
    rep.verdict = verdict.into();
    Ok(rep)
}

fn cmd_monotones(ctx: &Ctx, p: &Problem) -> CliResult<Report> {
    let Problem::Monotones { states, priors, k } = p else {
        return Err(wrong_kind("monotones", p.kind()));
    };
    let e = match priors {
        Some(q) => Ensemble::new(states.clone(), q.clone())?,
        None => Ensemble::uniform(states.clone()),
    };
    let profile = majorize::monotone_profile(&e)?;
    let value = k.map(|k| majorize::monotones(&e, k)).transpose()?;
    let entropy = majorize::von_neumann_entropy(&e.density())?;
    Ok(report("monotones", ctx, true, "ok", "", json!({ "profile": profile, "k": k, "value": value, "entropy_bits": entropy })))
}

fn run_selftest(ctx: &Ctx, trials: usize, replay: Option<&str>) -> CliResult<Report> {
    if let Some(id) = replay {
        let r = selftest::replay(id, ctx.seed)?;
        return Ok(report("selftest", ctx, r.passed, "holds", "violated", to_value(&r)));
    }
    let r = selftest::selftest(ctx.seed, trials)?;
    Ok(report("selftest", ctx, r.passed, "holds", "violated", to_value(&r)))
}

// ---------------------------------------------------------------------------
// text rendering

fn fmt_real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x != 0.0 && x.abs() < 1e-6 {
        return format!("{x:.3e}");
    }
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn as_complex(v: &Value) -> Option<(f64, f64)> {
    match v.as_array()?.as_slice() {
        [re, im] => Some((re.as_f64()?, im.as_f64()?)),
        _ => None,
    }
}

fn fmt_complex((re, im): (f64, f64)) -> String {
    if im == 0.0 {
        return fmt_real(re);
    }
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{}i", fmt_real(re), fmt_real(im.abs()))
}

fn fmt_scalar(v: &Value) -> String {
    match v {
        Value::Number(n) => n.as_f64().map_or_else(|| n.to_string(), fmt_real),
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_real_row(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.iter().all(Value::is_number))
}

// Complex entries are `[re, im]` pairs, so only a row of pairs is read as complex;
// a bare pair of numbers stays a real vector.
fn complex_row(v: &Value) -> Option<Vec<(f64, f64)>> {
    let a = v.as_array().filter(|a| !a.is_empty())?;
    a.iter().map(as_complex).collect()
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, val) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, val, out);
            }
        }
        Value::Array(items) if is_real_row(v) => {
            let cells: Vec<String> = items.iter().map(fmt_scalar).collect();
            out.push((prefix.into(), cells.join("  ")));
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(is_real_row) => {
            for (i, row) in items.iter().enumerate() {
                let cells: Vec<String> = row.as_array().unwrap().iter().map(fmt_scalar).collect();
                out.push((format!("{prefix}[{i}]"), cells.join("  ")));
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(|r| complex_row(r).is_some()) => {
            for (i, row) in items.iter().enumerate() {
                let cells: Vec<String> = complex_row(row).unwrap().into_iter().map(fmt_complex).collect();
                out.push((format!("{prefix}[{i}]"), cells.join("  ")));
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), item, out);
            }
        }
        scalar => out.push((prefix.into(), fmt_scalar(scalar))),
    }
}

/// Aligned `key  value` lines. The `usd --max-uniform` report prints only the number.
pub fn render_text(r: &Report) -> String {
    if let Some(v) = r.result.get("max_uniform_probability").and_then(Value::as_f64) {
        return format!("{}\n", fmt_real(v));
    }
    let mut rows = vec![("command".to_string(), r.command.clone()), ("verdict".into(), r.verdict.clone())];
    rows.push(("tol".into(), fmt_real(r.tol)));
    flatten("", &r.result, &mut rows);
    if let Some(ms) = r.elapsed_ms {
        rows.push(("elapsed_ms".into(), format!("{ms:.3}")));
    }
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut s = String::new();
    for (k, v) in rows {
        let pad = width - k.chars().count();
        s.push_str(&k);
        s.push_str(&" ".repeat(pad + 2));
        s.push_str(&v);
        s.push('\n');
    }
    s
}
