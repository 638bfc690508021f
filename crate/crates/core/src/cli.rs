//! Command-line front end.
//!
//! Every command builds its complete output in memory and writes it once at
//! the end, so a failing run (exit 1) never leaves partial output behind.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{
    cheb_condition_report, chebyshev_delta0_with, explicit_formula_rhs, optimize_params,
    schoenfeld_threshold, schoenfeld_verify, CertificateOptions, ChebyshevBoundParams, E2Form,
    SearchGrid, VerifyOptions,
};
use crate::error::{Error, Result};
use crate::kernel::KernelCache;
use crate::primes::{psi_smoothed, PrimePowerSieve, StepKind};
use crate::specfun::KernelParams;
use crate::zeros::{counting_bounds, ZeroTable};

pub const DEFAULT_SIEVE_LIMIT: u64 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "primebounds", version, about = "Certified explicit bounds for ψ, θ, π and π*")]
struct Cli {
    /// Zero ordinate table (text or binary).
    #[arg(long, global = true)]
    zeros: Option<PathBuf>,
    /// Largest x the prime-power sieve may cover.
    #[arg(long, global = true, default_value_t = DEFAULT_SIEVE_LIMIT)]
    sieve_limit: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Output file; `-` is standard output.
    #[arg(long, global = true, default_value = "-")]
    out: String,
    /// Tolerance override `name=value` (known: kernel_rel_tol).
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    tolerances: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// δ₀ for rows `X[,T]`, e.g. `e50,3.061e10` (X as e50, e^50 or a plain number).
    Table(TableArgs),
    /// Exhaustive check of the Schoenfeld-type inequalities on [lo, hi].
    Verify(VerifyArgs),
    /// Compare the smoothed ψ with the truncated explicit formula.
    Crosscheck(CrosscheckArgs),
    /// Summary of the zero table; optionally convert it.
    ZerosInfo(ZerosInfoArgs),
    /// Largest x for which the RH height T yields the bounds.
    Threshold(ThresholdArgs),
    /// The mid-range condition for y_n = e^{n/4}.
    ChebCond(ChebCondArgs),
}

#[derive(Debug, Args)]
struct TableArgs {
    rows: Vec<String>,
    /// RH height for rows given without one.
    #[arg(long = "height", short = 'T')]
    height: Option<f64>,
    /// Fix c instead of optimizing (needs --alpha).
    #[arg(long, requires = "alpha")]
    c: Option<f64>,
    #[arg(long, requires = "c")]
    alpha: Option<f64>,
    #[arg(long, value_enum, default_value_t = E2Arg::Certified)]
    e2_form: E2Arg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum E2Arg {
    Certified,
    WithoutLog3c,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    lo: f64,
    #[arg(long)]
    hi: f64,
    /// Functions to check: psi, theta, pi, pi_star.
    #[arg(long, value_delimiter = ',', default_value = "psi,theta,pi,pi_star")]
    which: Vec<StepKind>,
    /// Skip the strong ψ/θ variants.
    #[arg(long)]
    no_strong: bool,
    /// Skip the 0 ≤ x − θ(x) ≤ 1.938√x check.
    #[arg(long)]
    no_theta_auxiliary: bool,
}

#[derive(Debug, Args)]
struct CrosscheckArgs {
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    x: Vec<f64>,
    #[arg(long)]
    c: f64,
    #[arg(long)]
    eps: f64,
}

#[derive(Debug, Args)]
struct ZerosInfoArgs {
    /// Write the table in binary form to this path.
    #[arg(long)]
    write_binary: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ThresholdArgs {
    /// Heights; defaults to 3.061e10, 1e11 and 2.445e12.
    heights: Vec<f64>,
}

#[derive(Debug, Args)]
struct ChebCondArgs {
    #[arg(long, default_value_t = 72)]
    from: u32,
    #[arg(long, default_value_t = 84)]
    to: u32,
}

/// Settings shared by all commands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub zeros_path: Option<PathBuf>,
    pub sieve_limit: u64,
    pub output_format: OutputFormat,
    pub tolerances: BTreeMap<String, f64>,
}

const KNOWN_TOLERANCES: &[&str] = &["kernel_rel_tol"];

impl RunConfig {
    fn kernel_rel_tol(&self) -> f64 {
        self.tolerances.get("kernel_rel_tol").copied().unwrap_or(1e-4)
    }
}

fn parse_tolerances(raw: &[String]) -> Result<BTreeMap<String, f64>> {
    let mut out = BTreeMap::new();
    for item in raw {
        let (name, value) = item.split_once('=').ok_or_else(|| parse_err("--tol", format!("expected NAME=VALUE, got {item:?}")))?;
        if !KNOWN_TOLERANCES.contains(&name) {
            return Err(parse_err("--tol", format!("unknown tolerance {name:?}")));
        }
        let v: f64 = value.parse().map_err(|_| parse_err("--tol", format!("bad number {value:?}")))?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(parse_err("--tol", format!("{name} must be positive, got {v}")));
        }
        out.insert(name.to_string(), v);
    }
    Ok(out)
}

fn parse_err(location: &str, msg: impl Into<String>) -> Error {
    Error::Parse {
        location: location.to_string(),
        msg: msg.into(),
    }
}

/// log x for `e50`, `e^50`, `e^{50}` or a plain number.
pub fn parse_log_x(s: &str) -> Result<f64> {
    let t = s.trim();
    let v = if let Some(rest) = t.strip_prefix("e^").or_else(|| t.strip_prefix('e')) {
        let rest = rest.trim_start_matches('{').trim_end_matches('}');
        rest.parse::<f64>().map_err(|_| parse_err("row", format!("bad exponent in {s:?}")))?
    } else {
        let x: f64 = t.parse().map_err(|_| parse_err("row", format!("bad number {s:?}")))?;
        if !(x > 0.0) {
            return Err(parse_err("row", format!("x must be positive, got {s:?}")));
        }
        x.ln()
    };
    if !v.is_finite() {
        return Err(parse_err("row", format!("{s:?} is not finite")));
    }
    Ok(v)
}

fn parse_row(s: &str, default_t: Option<f64>) -> Result<(String, f64, f64)> {
    let (xs, ts) = match s.split_once(',') {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    };
    let log_x = parse_log_x(xs)?;
    let t = match ts {
        Some(b) => b.trim().parse::<f64>().map_err(|_| parse_err("row", format!("bad height in {s:?}")))?,
        None => default_t.ok_or_else(|| parse_err("row", format!("row {s:?} has no height and --height is not set")))?,
    };
    Ok((xs.trim().to_string(), log_x, t))
}

/// Shortest round-trip representation; exponent form outside [1e-4, 1e15).
pub fn fmt_real(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = v.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// δ₀ to six significant digits.
pub fn fmt_delta0(v: f64) -> String {
    format!("{v:.5e}")
}

fn delta0_json(v: f64) -> Value {
    json!(fmt_delta0(v).parse::<f64>().unwrap_or(v))
}

struct Output {
    /// CSV header and rows (already formatted).
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    /// JSON rows.
    json_rows: Vec<Value>,
    json_extra: serde_json::Map<String, Value>,
    code: i32,
    diagnostics: Vec<String>,
}

impl Output {
    fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
            json_rows: Vec::new(),
            json_extra: serde_json::Map::new(),
            code: 0,
            diagnostics: Vec::new(),
        }
    }

    fn push(&mut self, csv: Vec<String>, json: Value) {
        self.rows.push(csv);
        self.json_rows.push(json);
    }

    fn render(&self, format: OutputFormat) -> Result<Vec<u8>> {
        match format {
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let csv_err = |e: csv::Error| Error::Invalid(format!("csv: {e}"));
                w.write_record(&self.header).map_err(csv_err)?;
                for r in &self.rows {
                    w.write_record(r).map_err(csv_err)?;
                }
                w.into_inner().map_err(|e| Error::Invalid(format!("csv: {e}")))
            }
            OutputFormat::Json => {
                let mut obj = self.json_extra.clone();
                obj.insert("rows".into(), Value::Array(self.json_rows.clone()));
                let mut bytes = serde_json::to_vec_pretty(&Value::Object(obj))
                    .map_err(|e| Error::Invalid(format!("json: {e}")))?;
                bytes.push(b'\n');
                Ok(bytes)
            }
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

/// Runs the CLI with `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    match execute(cli) {
        Ok((out, format, target)) => {
            for d in &out.diagnostics {
                let _ = writeln!(stderr, "{d}");
            }
            let bytes = match out.render(format) {
                Ok(b) => b,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return 1;
                }
            };
            let written = if target == "-" {
                stdout.write_all(&bytes).map_err(Error::from)
            } else {
                std::fs::write(&target, &bytes).map_err(Error::from)
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: writing {target}: {e}");
                return 1;
            }
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn execute(cli: Cli) -> Result<(Output, OutputFormat, String)> {
    let config = RunConfig {
        zeros_path: cli.zeros.clone(),
        sieve_limit: cli.sieve_limit,
        output_format: cli.format,
        tolerances: parse_tolerances(&cli.tolerances)?,
    };
    // the table is loaded before any computation so that bad paths fail fast
    let table = match &config.zeros_path {
        Some(p) => Some(ZeroTable::load_path(p).map_err(|e| match e {
            Error::Io(io) => Error::Io(std::io::Error::new(io.kind(), format!("{}: {io}", p.display()))),
            other => other,
        })?),
        None => None,
    };
    let out = match cli.command {
        Command::Table(a) => cmd_table(&a, &config, table.as_ref())?,
        Command::Verify(a) => cmd_verify(&a, &config)?,
        Command::Crosscheck(a) => cmd_crosscheck(&a, &config, table.as_ref())?,
        Command::ZerosInfo(a) => cmd_zeros_info(&a, table.as_ref())?,
        Command::Threshold(a) => cmd_threshold(&a)?,
        Command::ChebCond(a) => cmd_cheb_cond(&a, &config, table.as_ref())?,
    };
    Ok((out, config.output_format, cli.out))
}

fn cmd_table(a: &TableArgs, config: &RunConfig, table: Option<&ZeroTable>) -> Result<Output> {
    let rows = a
        .rows
        .iter()
        .map(|r| parse_row(r, a.height))
        .collect::<Result<Vec<_>>>()?;
    let opts = CertificateOptions {
        e2_form: match a.e2_form {
            E2Arg::Certified => E2Form::Certified,
            E2Arg::WithoutLog3c => E2Form::WithoutLog3c,
        },
        ..CertificateOptions::default()
    };
    let cache = KernelCache::new(config.kernel_rel_tol());
    let grid = SearchGrid::default();
    let mut out = Output::new(vec!["x", "c", "T", "alpha", "delta0", "log_x", "E1", "E2", "E3", "status"]);
    if table.is_none() && !rows.is_empty() {
        out.diagnostics
            .push("warning: no zero table given; the zero sum is bounded from height 14".into());
    }
    for (label, log_x, t) in rows {
        let result = match (a.c, a.alpha) {
            (Some(c), Some(alpha)) => ChebyshevBoundParams::for_threshold(log_x, c, alpha, t).and_then(|p| {
                let kv = cache.get(c, alpha)?;
                chebyshev_delta0_with(&p, table, &kv, &opts)
            }),
            _ => optimize_params(log_x, t, table, &cache, &grid, &opts).map(|(_, cert)| cert),
        };
        match result {
            Ok(cert) => {
                out.push(
                    vec![
                        fmt_real(cert.valid_from),
                        fmt_real(cert.c),
                        fmt_real(cert.t),
                        fmt_real(cert.alpha),
                        fmt_delta0(cert.delta0),
                        fmt_real(cert.log_valid_from),
                        fmt_real(cert.e1),
                        fmt_real(cert.e2),
                        fmt_real(cert.e3),
                        "ok".into(),
                    ],
                    {
                        let mut v = to_json(&cert);
                        v["delta0"] = delta0_json(cert.delta0);
                        v["row"] = json!(label);
                        v["status"] = json!("ok");
                        v
                    },
                );
            }
            Err(e @ (Error::Infeasible(_) | Error::Domain { .. })) => {
                out.code = 2;
                let reason = e.to_string();
                out.diagnostics.push(format!("row {label}: {reason}"));
                out.push(
                    vec![
                        fmt_real(log_x.exp()),
                        a.c.map(fmt_real).unwrap_or_default(),
                        fmt_real(t),
                        a.alpha.map(fmt_real).unwrap_or_default(),
                        String::new(),
                        fmt_real(log_x),
                        String::new(),
                        String::new(),
                        String::new(),
                        format!("infeasible: {reason}"),
                    ],
                    json!({
                        "row": label,
                        "log_valid_from": log_x,
                        "T": t,
                        "status": "infeasible",
                        "reason": reason,
                    }),
                );
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn build_sieve(limit: f64, config: &RunConfig) -> Result<PrimePowerSieve> {
    if !(limit <= config.sieve_limit as f64) {
        return Err(Error::Range(format!(
            "{limit} exceeds the sieve limit {} (raise --sieve-limit)",
            config.sieve_limit
        )));
    }
    PrimePowerSieve::new((limit.ceil() as u64).max(2))
}

fn cmd_verify(a: &VerifyArgs, config: &RunConfig) -> Result<Output> {
    if !(a.lo > 1.0 && a.lo <= a.hi) {
        return Err(Error::Range(format!("invalid range [{}, {}] (need 1 < lo ≤ hi)", a.lo, a.hi)));
    }
    let sieve = build_sieve(a.hi, config)?;
    let opts = VerifyOptions {
        strong: !a.no_strong,
        theta_auxiliary: !a.no_theta_auxiliary,
    };
    let report = schoenfeld_verify(a.lo, a.hi, &a.which, &sieve, opts)?;
    let mut out = Output::new(vec!["x", "function", "side", "lhs", "rhs"]);
    for v in &report.violations {
        out.push(
            vec![
                fmt_real(v.x),
                v.function.clone(),
                to_json(&v.side).as_str().unwrap_or_default().to_string(),
                fmt_real(v.lhs),
                fmt_real(v.rhs),
            ],
            to_json(v),
        );
    }
    out.json_extra.insert("range".into(), json!(report.range));
    out.json_extra
        .insert("inequalities_checked".into(), json!(report.inequalities_checked));
    out.json_extra.insert("violation_count".into(), json!(report.violation_count));
    out.json_extra.insert("scan_points".into(), json!(report.scan_points));
    out.diagnostics.push(format!(
        "checked {} on [{}, {}] at {} points: {} violation(s)",
        report.inequalities_checked.join(","),
        fmt_real(a.lo),
        fmt_real(a.hi),
        report.scan_points,
        report.violation_count
    ));
    if !report.passed() {
        out.code = 2;
    }
    Ok(out)
}

fn cmd_crosscheck(a: &CrosscheckArgs, config: &RunConfig, table: Option<&ZeroTable>) -> Result<Output> {
    let params = KernelParams::new(a.c, a.eps)?;
    if !(a.eps < 0.1) {
        return Err(Error::Domain {
            op: "crosscheck",
            msg: format!("ε must be below 1/10, got {}", a.eps),
        });
    }
    let mut out = Output::new(vec!["x", "lhs", "rhs", "residual", "budget", "pass"]);
    if a.x.is_empty() {
        return Ok(out);
    }
    let table = table.ok_or_else(|| Error::Invalid("crosscheck needs --zeros".into()))?;
    let max_x = a.x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sieve = build_sieve(a.eps.exp() * max_x + 1.0, config)?;
    let mut rows = Vec::with_capacity(a.x.len());
    for &x in &a.x {
        let rhs = explicit_formula_rhs(x, params, table)?;
        let lhs = psi_smoothed(x, params, &sieve)?;
        rows.push((x, lhs, rhs));
    }
    for (x, lhs, rhs) in rows {
        let residual = (lhs - rhs.value).abs();
        let pass = residual <= rhs.error_budget;
        if !pass {
            out.code = 2;
        }
        out.push(
            vec![
                fmt_real(x),
                fmt_real(lhs),
                fmt_real(rhs.value),
                fmt_real(residual),
                fmt_real(rhs.error_budget),
                pass.to_string(),
            ],
            json!({
                "x": x,
                "lhs": lhs,
                "rhs": rhs.value,
                "residual": residual,
                "budget": rhs.error_budget,
                "pass": pass,
                "zeros_used": rhs.zeros_used,
            }),
        );
    }
    Ok(out)
}

fn cmd_zeros_info(a: &ZerosInfoArgs, table: Option<&ZeroTable>) -> Result<Output> {
    let table = table.ok_or_else(|| Error::Invalid("zeros-info needs --zeros".into()))?;
    let ords = table.ordinates();
    let h = table.height();
    let n = counting_bounds(h)?;
    let consistent = n.contains(ords.len() as f64);
    let mut out = Output::new(vec![
        "source", "count", "first", "last", "height", "precision", "count_consistent",
    ]);
    out.push(
        vec![
            table.source().to_string(),
            ords.len().to_string(),
            fmt_real(ords[0]),
            fmt_real(ords[ords.len() - 1]),
            fmt_real(h),
            fmt_real(table.precision()),
            consistent.to_string(),
        ],
        json!({
            "source": table.source(),
            "count": ords.len(),
            "first": ords[0],
            "last": ords[ords.len() - 1],
            "height": h,
            "precision": table.precision(),
            "count_consistent": consistent,
        }),
    );
    if let Some(path) = &a.write_binary {
        let mut buf = Vec::new();
        table.write_binary(&mut buf)?;
        std::fs::write(path, buf)?;
    }
    Ok(out)
}

fn cmd_threshold(a: &ThresholdArgs) -> Result<Output> {
    let heights = if a.heights.is_empty() {
        vec![3.061e10, 1e11, 2.445e12]
    } else {
        a.heights.clone()
    };
    let values = heights
        .iter()
        .map(|&t| schoenfeld_threshold(t).map(|x| (t, x)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Output::new(vec!["T", "x"]);
    for (t, x) in values {
        out.push(vec![fmt_real(t), fmt_real(x)], json!({"T": t, "x": x}));
    }
    Ok(out)
}

fn cmd_cheb_cond(a: &ChebCondArgs, config: &RunConfig, table: Option<&ZeroTable>) -> Result<Output> {
    if a.from > a.to {
        return Err(parse_err("cheb-cond", format!("empty range {}..{}", a.from, a.to)));
    }
    let cache = KernelCache::new(config.kernel_rel_tol());
    let rows = cheb_condition_report(a.from..=a.to, table, &cache);
    let mut out = Output::new(vec![
        "n", "y", "c", "T", "alpha", "delta", "lhs", "rhs", "holds", "certifiable", "note",
    ]);
    for r in &rows {
        out.push(
            vec![
                r.n.to_string(),
                fmt_real(r.y),
                fmt_real(r.c),
                fmt_real(r.t),
                fmt_real(r.alpha),
                r.delta.map(fmt_delta0).unwrap_or_default(),
                r.lhs.map(fmt_real).unwrap_or_default(),
                fmt_real(r.rhs),
                r.holds.to_string(),
                r.certifiable.to_string(),
                r.note.clone(),
            ],
            to_json(r),
        );
    }
    Ok(out)
}
