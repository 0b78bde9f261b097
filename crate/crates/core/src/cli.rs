//! Command-line front end: `eval`, `table` and `verify`.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::quadrature::QuadSpec;
use crate::suites::{run_suite, Suite, SuiteConfig, SuiteReport};
use crate::wavefunctions::{psi, EvalOptions, PositionPoint, Representation, SpectralPoint};

/// Exit status for a failed verification suite.
pub const EXIT_VERIFY_FAIL: i32 = 1;

/// Largest grid `table` accepts.
pub const MAX_GRID: usize = 10_000;

#[derive(Debug, Parser)]
#[command(name = "hocs", version, about = "Evaluate and cross-check Calogero-Sutherland wave functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate Ψ_λ(x) at one point.
    Eval(PointArgs),
    /// Evaluate over a grid, one record per point in row-major order.
    Table(TableArgs),
    /// Run a named verification suite ("all" runs every suite).
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
struct PointArgs {
    /// Representation: euler, mb, series, asymptotic or zero.
    #[arg(long, default_value = "euler")]
    rep: String,
    /// Coupling constant.
    #[arg(long, default_value_t = 2.0)]
    g: f64,
    /// Spectral parameters, comma-separated; complex entries as re:im.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Positions, comma-separated [default: all zero].
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Relative tolerance [default: 1e-8 for n ≤ 2, 1e-4 for n = 3].
    #[arg(long)]
    tol: Option<f64>,
    /// Largest series degree.
    #[arg(long, default_value_t = 200)]
    kmax: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Grid axis NAME=START:STOP:COUNT with NAME one of lambdaK, xK (K from 1) or g. Repeatable;
    /// the first axis varies slowest. Several representations (--rep euler,mb) add a diff column.
    #[arg(long = "axis", allow_hyphen_values = true)]
    axes: Vec<String>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Suite name.
    suite: String,
    #[arg(long, default_value_t = 2.0)]
    g: f64,
    /// Include the slow n = 3 Mellin-Barnes duality points.
    #[arg(long)]
    slow: bool,
}

/// Parses `a,b,c` with complex entries written `re:im`.
pub fn parse_lambda(s: &str) -> Result<Vec<C64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let num = |u: &str| u.trim().parse::<f64>().map_err(|_| Error::Domain(format!("bad number {u:?} in λ")));
            match t.split_once(':') {
                Some((re, im)) => Ok(C64::new(num(re)?, num(im)?)),
                None => Ok(C64::new(num(t)?, 0.0)),
            }
        })
        .collect()
}

pub fn parse_reals(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Domain(format!("bad number {t:?}"))))
        .collect()
}

fn parse_reps(s: &str) -> Result<Vec<Representation>> {
    s.split(',').map(|t| t.trim().parse()).collect()
}

fn lambda_json(l: &[C64]) -> Value {
    Value::Array(l.iter().map(|z| if z.im == 0.0 { json!(z.re) } else { json!([z.re, z.im]) }).collect())
}

/// Shortest round-trip decimal, exponent form for very small or large magnitudes.
fn num(v: f64) -> String {
    if v.is_finite() {
        serde_json::to_string(&v).expect("finite float")
    } else {
        v.to_string()
    }
}

fn lambda_token(z: C64) -> String {
    if z.im == 0.0 {
        num(z.re)
    } else {
        format!("{}:{}", num(z.re), num(z.im))
    }
}

fn rep_name(r: Representation) -> &'static str {
    match r {
        Representation::Euler => "euler",
        Representation::Mb => "mb",
        Representation::Series => "series",
        Representation::Asymptotic => "asymptotic",
        Representation::Zero => "zero",
    }
}

#[derive(Debug, Clone)]
struct Point {
    g: f64,
    lambda: Vec<C64>,
    x: Vec<f64>,
}

impl PointArgs {
    fn base(&self) -> Result<Point> {
        let lambda = parse_lambda(&self.lambda)?;
        let x = match &self.x {
            Some(s) => parse_reals(s)?,
            None => vec![0.0; lambda.len()],
        };
        if x.len() != lambda.len() {
            return Err(Error::Domain(format!("λ has {} entries but x has {}", lambda.len(), x.len())));
        }
        Ok(Point { g: self.g, lambda, x })
    }

    fn options(&self, n: usize) -> EvalOptions {
        let tol = self.tol.unwrap_or(if n <= 2 { 1e-8 } else { 1e-4 });
        EvalOptions::new(QuadSpec::rel(tol), self.kmax)
    }
}

#[derive(Debug, Serialize)]
struct EvalRecord {
    rep: &'static str,
    g: f64,
    lambda: Value,
    x: Vec<f64>,
    value_re: f64,
    value_im: f64,
    abs_err: f64,
    n_evals: u64,
}

fn evaluate(p: &Point, rep: Representation, opt: &EvalOptions) -> Result<crate::quadrature::EvalResult> {
    let lam = SpectralPoint::new(p.lambda.clone())?;
    let x = PositionPoint::new(p.x.clone())?;
    if opt.spec.rel_tol.is_nan() || !(opt.spec.rel_tol > 0.0) {
        return Err(Error::Domain("--tol must be positive".into()));
    }
    psi(&lam, &x, p.g, rep, opt)
}

fn envelope(command: &str, params: Value, results: Value, pass: bool) -> String {
    let v = json!({"command": command, "params": params, "results": results, "pass": pass});
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn csv_string(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn cmd_eval(a: &PointArgs) -> Result<String> {
    let p = a.base()?;
    let reps = parse_reps(&a.rep)?;
    let [rep] = reps[..] else {
        return Err(Error::Domain("eval takes exactly one representation".into()));
    };
    let opt = a.options(p.lambda.len());
    let r = evaluate(&p, rep, &opt)?;
    let rec = EvalRecord {
        rep: rep_name(rep),
        g: p.g,
        lambda: lambda_json(&p.lambda),
        x: p.x.clone(),
        value_re: r.value.re,
        value_im: r.value.im,
        abs_err: r.abs_err,
        n_evals: r.n_evals,
    };
    Ok(match a.format {
        Format::Json => {
            let params = json!({"rep": rep_name(rep), "g": p.g, "lambda": lambda_json(&p.lambda), "x": p.x, "tol": opt.spec.rel_tol, "kmax": opt.kmax});
            envelope("eval", params, json!([rec]), true)
        }
        Format::Csv => {
            let header: Vec<String> = ["rep", "g", "lambda", "x", "value_re", "value_im", "abs_err", "n_evals"].map(String::from).to_vec();
            let lam: Vec<String> = p.lambda.iter().map(|&z| lambda_token(z)).collect();
            let xs: Vec<String> = p.x.iter().map(|&v| num(v)).collect();
            let row = vec![
                rec.rep.to_string(),
                num(p.g),
                lam.join(","),
                xs.join(","),
                num(rec.value_re),
                num(rec.value_im),
                num(rec.abs_err),
                rec.n_evals.to_string(),
            ];
            csv_string(&header, &[row])
        }
    })
}

#[derive(Debug, Clone, PartialEq)]
enum AxisTarget {
    Lambda(usize),
    X(usize),
    G,
}

#[derive(Debug, Clone)]
struct Axis {
    target: AxisTarget,
    values: Vec<f64>,
}

fn parse_axis(s: &str, n: usize) -> Result<Axis> {
    let bad = || Error::Domain(format!("axis {s:?} is not NAME=START:STOP:COUNT"));
    let (name, range) = s.split_once('=').ok_or_else(bad)?;
    let parts: Vec<&str> = range.split(':').collect();
    let [a, b, c] = parts[..] else { return Err(bad()) };
    let (start, stop) = (a.trim().parse::<f64>().map_err(|_| bad())?, b.trim().parse::<f64>().map_err(|_| bad())?);
    let count = c.trim().parse::<usize>().map_err(|_| bad())?;
    let index = |rest: &str| -> Result<usize> {
        let k = rest.parse::<usize>().map_err(|_| bad())?;
        if k == 0 || k > n {
            return Err(Error::Domain(format!("axis {name} refers to coordinate {k}, but n = {n}")));
        }
        Ok(k - 1)
    };
    let target = if name == "g" {
        AxisTarget::G
    } else if let Some(rest) = name.strip_prefix("lambda") {
        AxisTarget::Lambda(index(rest)?)
    } else if let Some(rest) = name.strip_prefix('x') {
        AxisTarget::X(index(rest)?)
    } else {
        return Err(bad());
    };
    let values = match count {
        0 => vec![],
        1 => vec![start],
        _ => (0..count).map(|i| start + (stop - start) * i as f64 / (count - 1) as f64).collect(),
    };
    Ok(Axis { target, values })
}

/// Row-major product of the axes applied to `base`; the first axis varies slowest.
fn grid_points(base: &Point, axes: &[Axis]) -> Vec<Point> {
    let mut out = vec![base.clone()];
    for ax in axes {
        let mut next = Vec::with_capacity(out.len() * ax.values.len());
        for p in &out {
            for &v in &ax.values {
                let mut q = p.clone();
                match ax.target {
                    AxisTarget::Lambda(k) => q.lambda[k].re = v,
                    AxisTarget::X(k) => q.x[k] = v,
                    AxisTarget::G => q.g = v,
                }
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn cmd_table(a: &TableArgs) -> Result<String> {
    let base = a.point.base()?;
    let n = base.lambda.len();
    let reps = parse_reps(&a.point.rep)?;
    let axes: Vec<Axis> = a.axes.iter().map(|s| parse_axis(s, n)).collect::<Result<_>>()?;
    let size = axes.iter().try_fold(1usize, |acc, ax| acc.checked_mul(ax.values.len()));
    if size.is_none_or(|s| s > MAX_GRID) {
        return Err(Error::Domain(format!("grid exceeds {MAX_GRID} points")));
    }
    let points = if axes.iter().any(|ax| ax.values.is_empty()) { vec![] } else { grid_points(&base, &axes) };
    let opt = a.point.options(n);
    let with_diff = reps.len() == 2;

    let mut header: Vec<String> = vec!["g".into()];
    header.extend((1..=n).map(|k| format!("lambda{k}")));
    header.extend((1..=n).map(|k| format!("x{k}")));
    for &r in &reps {
        let nm = rep_name(r);
        header.extend([format!("{nm}_re"), format!("{nm}_im"), format!("{nm}_abs_err")]);
    }
    if with_diff {
        header.push("diff".into());
    }
    header.push("error".into());

    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut records: Vec<Value> = Vec::new();
    let mut all_ok = true;
    for p in &points {
        let mut row: Vec<String> = vec![num(p.g)];
        row.extend(p.lambda.iter().map(|&z| lambda_token(z)));
        row.extend(p.x.iter().map(|&v| num(v)));
        let mut rec = serde_json::Map::new();
        rec.insert("g".into(), json!(p.g));
        rec.insert("lambda".into(), lambda_json(&p.lambda));
        rec.insert("x".into(), json!(p.x));
        let mut values = Vec::new();
        let mut errors = Vec::new();
        for &r in &reps {
            let nm = rep_name(r);
            match evaluate(p, r, &opt) {
                Ok(v) => {
                    row.extend([num(v.value.re), num(v.value.im), num(v.abs_err)]);
                    rec.insert(nm.into(), json!({"value_re": v.value.re, "value_im": v.value.im, "abs_err": v.abs_err, "n_evals": v.n_evals}));
                    values.push(Some(v.value));
                }
                Err(e) => {
                    row.extend([String::new(), String::new(), String::new()]);
                    rec.insert(nm.into(), Value::Null);
                    errors.push(format!("{nm}: {e}"));
                    values.push(None);
                }
            }
        }
        if with_diff {
            let diff = match (values[0], values[1]) {
                (Some(u), Some(v)) => Some((u - v).norm() / u.norm().max(v.norm()).max(1e-300)),
                _ => None,
            };
            row.push(diff.map(num).unwrap_or_default());
            rec.insert("diff".into(), json!(diff));
        }
        let error = errors.join("; ");
        all_ok &= error.is_empty();
        row.push(error.clone());
        rec.insert("error".into(), if error.is_empty() { Value::Null } else { json!(error) });
        rows.push(row);
        records.push(Value::Object(rec));
    }

    Ok(match a.point.format {
        Format::Csv => csv_string(&header, &rows),
        Format::Json => {
            let params = json!({
                "rep": reps.iter().map(|&r| rep_name(r)).collect::<Vec<_>>(),
                "g": base.g,
                "lambda": lambda_json(&base.lambda),
                "x": base.x,
                "tol": opt.spec.rel_tol,
                "kmax": opt.kmax,
                "axes": a.axes,
            });
            envelope("table", params, Value::Array(records), all_ok)
        }
    })
}

fn cmd_verify(a: &VerifyArgs) -> Result<(String, Vec<String>, bool)> {
    let suites: Vec<Suite> = if a.suite == "all" { Suite::ALL.to_vec() } else { vec![a.suite.parse()?] };
    let cfg = SuiteConfig { g: a.g, include_slow: a.slow };
    let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(s, &cfg)).collect::<Result<_>>()?;
    let pass = reports.iter().all(|r| r.pass);
    let failures: Vec<String> = reports.iter().flat_map(|r| r.failures().into_iter().map(move |f| format!("{}: {f}", r.suite))).collect();
    let params = json!({"suite": a.suite, "g": a.g, "slow": a.slow});
    let results = serde_json::to_value(&reports).expect("serializable");
    Ok((envelope("verify", params, results, pass), failures, pass))
}

/// Runs the CLI on `args` (including the program name), writing to `out` and `err`. Returns the
/// exit status: 0 success, 1 failed verification, 2 invalid input, 3 numerical failure.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { 0 } else { 2 };
        }
    };
    let outcome = match &cli.command {
        Command::Eval(a) => cmd_eval(a).map(|s| (s, vec![], true)),
        Command::Table(a) => cmd_table(a).map(|s| (s, vec![], true)),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok((text, failures, pass)) => {
            let _ = out.write_all(text.as_bytes());
            for f in &failures {
                let _ = writeln!(err, "FAIL {f}");
            }
            if pass {
                0
            } else {
                EXIT_VERIFY_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
