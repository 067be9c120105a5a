//! `hbseries` command-line tool: evaluate `F(z, x)`, check identities, and
//! print Stirling, harmonic and Taylor tables.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 domain error, 3 a series
//! did not converge or an identity residual is above its threshold.

mod parse;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use hbseries::f_function::{f_eval, f_taylor_coeff, FEvalRequest, MethodChoice, TAYLOR_MAX_K};
use hbseries::identities::{
    catalog, sweep, write_csv, write_json_lines, Axes, Identity, Outcome, ParamValue, Point,
    Summary,
};
use hbseries::series::MAX_TERMS_ENV;
use hbseries::special::{harmonic, stirling_first};
use hbseries::{Complex64, Error};

/// Largest `n` accepted by `table --what harmonic`.
const HARMONIC_TABLE_MAX: usize = 10_000;

#[derive(Parser)]
#[command(
    name = "hbseries",
    version,
    about = "Binomial series with harmonic numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate F(z, x) = Σ binom(z, n) (−1)^{n−1} x^n / n.
    EvalF(EvalArgs),
    /// Check one identity at the given point(s).
    Check(GridArgs),
    /// Check one identity, or all of them, over a parameter grid.
    Sweep(GridArgs),
    /// Print the Stirling triangle s(n, k) or the harmonic numbers H_n.
    Table(TableArgs),
    /// Print the z^k Taylor coefficients of F(z, x) at z = 0, k = 1..6.
    Taylor(TaylorArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(clap::Args)]
struct Common {
    /// Target tolerance.
    #[arg(long, default_value = "1e-10", value_parser = parse::positive, allow_hyphen_values = true)]
    tol: f64,
    /// Output format.
    #[arg(long)]
    output: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct EvalArgs {
    /// Complex parameter, "re" or "re,im".
    #[arg(long, visible_alias = "p", value_parser = parse::complex, allow_hyphen_values = true)]
    z: Complex64,
    #[arg(long, visible_alias = "y", value_parser = parse::real, allow_hyphen_values = true)]
    x: f64,
    /// One of series, closed_pos, closed_neg, integral, functional_eq,
    /// finite_integer, at_one, auto.
    #[arg(long, default_value = "auto", value_parser = MethodChoice::from_str)]
    method: MethodChoice,
    #[command(flatten)]
    common: Common,
}

#[derive(clap::Args)]
struct GridArgs {
    /// Identity name, or "all" (sweep only).
    #[arg(long)]
    identity: String,
    /// z values: a comma list, start:stop:step, or ";"-separated "re,im" entries.
    #[arg(long, visible_alias = "p", allow_hyphen_values = true)]
    z: Option<String>,
    /// Real argument values: a comma list or start:stop:step.
    #[arg(long, visible_aliases = ["y", "t"], allow_hyphen_values = true)]
    x: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Table {
    Stirling,
    Harmonic,
}

#[derive(clap::Args)]
struct TableArgs {
    #[arg(long)]
    what: Table,
    /// Largest index.
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(clap::Args)]
struct TaylorArgs {
    #[arg(long, value_parser = parse::real, allow_hyphen_values = true)]
    x: f64,
    #[command(flatten)]
    common: Common,
}

struct Exit {
    code: u8,
    message: String,
}

impl Exit {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn failed(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        if e.is_domain() {
            Exit::domain(e.to_string())
        } else {
            Exit::failed(e.to_string())
        }
    }
}

type Run = Result<(), Exit>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.message.is_empty() {
                eprintln!("error: {}", e.message);
            }
            ExitCode::from(e.code)
        }
    }
}

fn run(command: Command) -> Run {
    check_max_terms_env()?;
    match command {
        Command::EvalF(a) => eval_f(a),
        Command::Check(a) => check(a, false),
        Command::Sweep(a) => check(a, true),
        Command::Table(a) => table(a),
        Command::Taylor(a) => taylor(a),
    }
}

fn check_max_terms_env() -> Run {
    match std::env::var(MAX_TERMS_ENV) {
        Ok(v) if !matches!(v.trim().parse::<usize>(), Ok(n) if n > 0) => Err(Exit::usage(format!(
            "{MAX_TERMS_ENV} must be a positive integer, got \"{v}\""
        ))),
        _ => Ok(()),
    }
}

fn emit(common: &Common, bytes: &[u8]) -> Run {
    let result = match &common.out {
        Some(path) => std::fs::write(path, bytes),
        None => std::io::stdout().lock().write_all(bytes),
    };
    result.map_err(|e| Exit::usage(format!("cannot write output: {e}")))
}

fn fmt_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.im < 0.0 || c.im.is_sign_negative() {
        format!("{}-{}i", c.re, -c.im)
    } else {
        format!("{}+{}i", c.re, c.im)
    }
}

fn eval_f(a: EvalArgs) -> Run {
    let req = FEvalRequest {
        z: a.z,
        x: a.x,
        method: a.method,
        tol: a.common.tol,
    };
    let ev = f_eval(&req)?;
    let r = ev.result;
    let mut s = String::new();
    match a.common.output.unwrap_or(Format::Text) {
        Format::Text => {
            writeln!(
                s,
                "F({}, {}) = {}",
                fmt_complex(a.z),
                a.x,
                fmt_complex(r.value)
            )
            .unwrap();
            writeln!(s, "abs_error_estimate = {:e}", r.abs_error_estimate).unwrap();
            writeln!(s, "terms_used = {}", r.terms_used).unwrap();
            writeln!(s, "method = {}", ev.method).unwrap();
            writeln!(s, "converged = {}", r.converged).unwrap();
        }
        Format::Json => {
            let v = serde_json::json!({
                "z": {"re": a.z.re, "im": a.z.im},
                "x": a.x,
                "value": {"re": r.value.re, "im": r.value.im},
                "abs_error_estimate": r.abs_error_estimate,
                "terms_used": r.terms_used,
                "method": ev.method.name(),
                "converged": r.converged,
            });
            writeln!(s, "{v}").unwrap();
        }
        Format::Csv => {
            s.push_str(
                "z_re,z_im,x,value_re,value_im,abs_error_estimate,terms_used,method,converged\n",
            );
            writeln!(
                s,
                "{},{},{},{},{},{},{},{},{}",
                a.z.re,
                a.z.im,
                a.x,
                r.value.re,
                r.value.im,
                r.abs_error_estimate,
                r.terms_used,
                ev.method,
                r.converged
            )
            .unwrap();
        }
    }
    emit(&a.common, s.as_bytes())?;
    if r.converged {
        Ok(())
    } else {
        Err(Exit::failed(format!(
            "not converged: error estimate {:e} above tol {:e}",
            r.abs_error_estimate, a.common.tol
        )))
    }
}

/// Distinct values of one axis among the identity's catalog points, in order.
fn catalog_axis<T: PartialEq + Copy>(id: Identity, pick: impl Fn(&Point) -> T) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for p in id.catalog_points() {
        let v = pick(&p);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Points for one identity: the product of the given grids (z-major), with
/// the catalog filling any axis that is not given.
fn points_for(
    id: Identity,
    zs: Option<&[Complex64]>,
    xs: Option<&[f64]>,
    require_all: bool,
) -> Result<Vec<Point>, Exit> {
    let (needs_z, needs_x) = match id.axes() {
        Axes::ZX => (true, true),
        Axes::Z => (true, false),
        Axes::X => (false, true),
    };
    if require_all {
        if needs_z && zs.is_none() {
            return Err(Exit::usage(format!(
                "{} needs --{}",
                id.name(),
                id.z_name()
            )));
        }
        if needs_x && xs.is_none() {
            return Err(Exit::usage(format!(
                "{} needs --{}",
                id.name(),
                id.x_name()
            )));
        }
    }
    if (zs.is_none() || !needs_z) && (xs.is_none() || !needs_x) {
        return Ok(id.catalog_points());
    }
    let zs: Vec<Complex64> = match (needs_z, zs) {
        (false, _) => vec![Complex64::new(0.0, 0.0)],
        (true, Some(zs)) => zs.to_vec(),
        (true, None) => catalog_axis(id, |p| p.z),
    };
    let xs: Vec<f64> = match (needs_x, xs) {
        (false, _) => vec![0.0],
        (true, Some(xs)) => xs.to_vec(),
        (true, None) => catalog_axis(id, |p| p.x),
    };
    Ok(zs
        .iter()
        .flat_map(|&z| xs.iter().map(move |&x| Point { z, x }))
        .collect())
}

fn check(a: GridArgs, is_sweep: bool) -> Run {
    let ids: Vec<Identity> = if a.identity.trim().eq_ignore_ascii_case("all") {
        if !is_sweep {
            return Err(Exit::usage("--identity all is only valid for sweep"));
        }
        Identity::ALL.to_vec()
    } else {
        vec![Identity::from_str(&a.identity).map_err(Exit::usage)?]
    };
    let zs =
        a.z.as_deref()
            .map(parse::complex_grid)
            .transpose()
            .map_err(|e| Exit::usage(format!("--z: {e}")))?;
    let xs =
        a.x.as_deref()
            .map(parse::real_grid)
            .transpose()
            .map_err(|e| Exit::usage(format!("--x: {e}")))?;

    let jobs: Vec<(Identity, Point)> = if ids.len() > 1 && zs.is_none() && xs.is_none() {
        catalog()
    } else {
        let mut jobs = Vec::new();
        for &id in &ids {
            for p in points_for(id, zs.as_deref(), xs.as_deref(), !is_sweep)? {
                jobs.push((id, p));
            }
        }
        jobs
    };

    let tol = a.common.tol;
    let outcomes = sweep(&jobs, tol);
    let summary = Summary::of(&outcomes, tol);

    let mut buf = Vec::new();
    let io_err = |e: std::io::Error| Exit::usage(format!("cannot format output: {e}"));
    match a.common.output.unwrap_or(Format::Json) {
        Format::Json => write_json_lines(&mut buf, &outcomes).map_err(io_err)?,
        Format::Csv => write_csv(&mut buf, &outcomes)
            .map_err(|e| Exit::usage(format!("cannot format output: {e}")))?,
        Format::Text => write_text(&mut buf, &outcomes, tol).map_err(io_err)?,
    }
    emit(&a.common, &buf)?;

    eprintln!(
        "{} reports, {} skipped, {} failed, {} not converged, max rel_residual {:e}",
        summary.reports,
        summary.skipped,
        summary.failed,
        summary.not_converged,
        summary.max_rel_residual
    );
    if summary.reports == 0 {
        let reason = outcomes.iter().find_map(|o| match o {
            Outcome::Skipped(s) => Some(s.reason.clone()),
            Outcome::Report(_) => None,
        });
        return Err(Exit::domain(match reason {
            Some(r) if outcomes.len() == 1 => r,
            _ => "no admissible parameter point".to_string(),
        }));
    }
    if summary.all_pass() {
        Ok(())
    } else {
        Err(Exit::failed(""))
    }
}

fn fmt_param(v: &ParamValue) -> String {
    match *v {
        ParamValue::Real(r) => format!("{r}"),
        ParamValue::Complex(c) => fmt_complex(c.into()),
    }
}

fn write_text(out: &mut Vec<u8>, outcomes: &[Outcome], tol: f64) -> std::io::Result<()> {
    for o in outcomes {
        match o {
            Outcome::Report(r) => {
                let params: Vec<String> = r
                    .params
                    .iter()
                    .map(|(k, v)| format!("{k}={}", fmt_param(v)))
                    .collect();
                let status = if !r.converged {
                    "NOT_CONVERGED"
                } else if r.passes(tol) {
                    "ok"
                } else {
                    "FAIL"
                };
                writeln!(
                    out,
                    "{:<14} {:<24} lhs={} rhs={} rel_residual={:e} [{} | {}] {}",
                    r.identity_name,
                    params.join(" "),
                    fmt_complex(r.lhs.into()),
                    fmt_complex(r.rhs.into()),
                    r.rel_residual,
                    r.lhs_method,
                    r.rhs_method,
                    status
                )?;
            }
            Outcome::Skipped(s) => {
                let params: Vec<String> = s
                    .params
                    .iter()
                    .map(|(k, v)| format!("{k}={}", fmt_param(v)))
                    .collect();
                writeln!(
                    out,
                    "{:<14} {:<24} skipped: {}",
                    s.identity_name,
                    params.join(" "),
                    s.reason
                )?;
            }
        }
    }
    Ok(())
}

fn table(a: TableArgs) -> Run {
    let mut s = String::new();
    let format = a.common.output.unwrap_or(Format::Text);
    match a.what {
        Table::Stirling => {
            let t = stirling_first(a.n)?;
            match format {
                Format::Text => {
                    for n in 0..=a.n {
                        let row: Vec<String> = t.row(n).iter().map(i64::to_string).collect();
                        writeln!(s, "{n}: {}", row.join(", ")).unwrap();
                    }
                }
                Format::Csv => {
                    s.push_str("n,k,s\n");
                    for n in 0..=a.n {
                        for (k, v) in t.row(n).iter().enumerate() {
                            writeln!(s, "{n},{k},{v}").unwrap();
                        }
                    }
                }
                Format::Json => {
                    let rows: Vec<&[i64]> = (0..=a.n).map(|n| t.row(n)).collect();
                    writeln!(
                        s,
                        "{}",
                        serde_json::json!({"what": "stirling", "rows": rows})
                    )
                    .unwrap();
                }
            }
        }
        Table::Harmonic => {
            if a.n > HARMONIC_TABLE_MAX {
                return Err(Exit::domain(format!(
                    "harmonic table limited to n ≤ {HARMONIC_TABLE_MAX}, requested {}",
                    a.n
                )));
            }
            let values: Vec<f64> = (0..=a.n as u64).map(harmonic::<f64>).collect();
            match format {
                Format::Text => {
                    for (n, h) in values.iter().enumerate() {
                        writeln!(s, "{n}: {h}").unwrap();
                    }
                }
                Format::Csv => {
                    s.push_str("n,h\n");
                    for (n, h) in values.iter().enumerate() {
                        writeln!(s, "{n},{h}").unwrap();
                    }
                }
                Format::Json => {
                    writeln!(
                        s,
                        "{}",
                        serde_json::json!({"what": "harmonic", "values": values})
                    )
                    .unwrap();
                }
            }
        }
    }
    emit(&a.common, s.as_bytes())
}

fn taylor(a: TaylorArgs) -> Run {
    if a.x.abs() > 1.0 || a.x == -1.0 {
        return Err(Exit::domain(format!(
            "taylor needs −1 < x ≤ 1, got x = {}",
            a.x
        )));
    }
    let coeffs = (1..=TAYLOR_MAX_K)
        .map(|k| f_taylor_coeff::<f64>(k, a.x, a.common.tol))
        .collect::<Result<Vec<_>, _>>()?;
    let mut s = String::new();
    match a.common.output.unwrap_or(Format::Text) {
        Format::Text => {
            writeln!(
                s,
                "{:>2} {:>24} {:>24} {:>12} {:>24}",
                "k", "stirling", "polylog", "difference", "coefficient"
            )
            .unwrap();
            for c in &coeffs {
                writeln!(
                    s,
                    "{:>2} {:>24} {:>24} {:>12.3e} {:>24}",
                    c.k,
                    c.stirling,
                    c.polylog,
                    c.difference(),
                    c.series_coefficient()
                )
                .unwrap();
            }
        }
        Format::Csv => {
            s.push_str("k,stirling,polylog,difference,coefficient\n");
            for c in &coeffs {
                writeln!(
                    s,
                    "{},{},{},{},{}",
                    c.k,
                    c.stirling,
                    c.polylog,
                    c.difference(),
                    c.series_coefficient()
                )
                .unwrap();
            }
        }
        Format::Json => {
            for c in &coeffs {
                let v = serde_json::json!({
                    "k": c.k,
                    "x": a.x,
                    "stirling": c.stirling,
                    "polylog": c.polylog,
                    "difference": c.difference(),
                    "coefficient": c.series_coefficient(),
                });
                writeln!(s, "{v}").unwrap();
            }
        }
    }
    emit(&a.common, s.as_bytes())?;
    let tol = a.common.tol.max(1e-6);
    match coeffs
        .iter()
        .find(|c| c.difference().abs() > tol * c.stirling.abs().max(1.0))
    {
        Some(c) => Err(Exit::failed(format!(
            "forms disagree at k = {}: difference {:e}",
            c.k,
            c.difference()
        ))),
        None => Ok(()),
    }
}
