//! The `sqw` command line.
//!
//! Exit codes: 0 success, 1 invalid state or failed check, 2 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::permworld::{check_s4_facts, classify, enumerate_subgroups, GroupKind};
use crate::report::RelationReport;
use crate::s3world::{
    assemble_s3, check_s3_relations, concurrence_closed, gain, grid_param, ie_state, is_pure,
    maximize_gain, mean_values, measure_update, t_param, GainResult, MeasurementAxis, S3Coeffs,
    TParam,
};
use crate::twoqubit::{concurrence_oracle, eof_from_concurrence, purity, validate_density};
use crate::xworld::check_x_relations;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Tolerance of the purity flag in state reports.
pub const PURE_TOL: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(name = "sqw", version, about = "Explore X-states and the S3-symmetric two-qubit world")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify the algebraic identities of a world.
    Check {
        #[arg(value_enum)]
        world: World,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Describe an S3-world state.
    State {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
    },
    /// Measure an observable non-selectively and compare entanglement.
    Measure {
        #[arg(long)]
        axis: MeasurementAxis,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
    },
    /// Tabulate the entanglement gain over all pure states.
    Sweep {
        #[arg(long)]
        axis: MeasurementAxis,
        #[arg(long, default_value_t = 1001)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: SweepFormat,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum World {
    X,
    S3,
    S4,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SweepFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct StateArgs {
    /// Coefficient of the identity (defaults to 1 with --b/--c/--d).
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<f64>,
    /// Pure state on the boundary circle; accepts "inf".
    #[arg(long, allow_hyphen_values = true)]
    t: Option<TParam>,
    /// The irreducible entangled state.
    #[arg(long)]
    ie: bool,
}

impl StateArgs {
    fn coeffs(&self) -> Result<S3Coeffs, String> {
        let explicit = [self.a, self.b, self.c, self.d].iter().any(Option::is_some);
        let modes = usize::from(explicit) + usize::from(self.t.is_some()) + usize::from(self.ie);
        if modes != 1 {
            return Err("give exactly one of --b/--c/--d, --t or --ie".into());
        }
        if let Some(t) = self.t {
            return Ok(t_param(t));
        }
        if self.ie {
            return Ok(ie_state());
        }
        match (self.b, self.c, self.d) {
            (Some(b), Some(c), Some(d)) => Ok(S3Coeffs { a: self.a.unwrap_or(1.0), b, c, d }),
            _ => Err("--b, --c and --d must all be given".into()),
        }
    }
}

/// Rounds to 12 significant digits; negative zero becomes zero.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Plain decimal for ordinary magnitudes, exponent form for tiny or huge ones.
fn num(x: f64) -> String {
    if x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e12) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn sig12_all<const N: usize>(xs: [f64; N]) -> [f64; N] {
    xs.map(sig12)
}

/// Everything known about one state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateReport {
    pub coeffs: S3Coeffs,
    /// Ascending.
    pub eigenvalues: [f64; 4],
    pub pure: bool,
    /// `Σ Aᵢ²`; only for the `a = 1` family.
    #[serde(rename = "criterion_R")]
    pub criterion_r: Option<f64>,
    /// Closed form; only for the `a = 1` family.
    pub concurrence_closed: Option<f64>,
    pub concurrence_oracle: f64,
    /// Entanglement of formation of the oracle concurrence.
    pub eof: f64,
}

/// Builds the report for `c`, validating the state first.
pub fn state_report(c: &S3Coeffs) -> crate::Result<StateReport> {
    let c = S3Coeffs::new(c.a, c.b, c.c, c.d)?;
    let rho = validate_density(assemble_s3(&c))?;
    let oracle = concurrence_oracle(&rho)?;
    let unit_family = c.is_unit_family();
    let (criterion_r, closed) = if unit_family {
        (Some(mean_values(&c).r), Some(concurrence_closed(&c)?))
    } else {
        (None, None)
    };
    let pure = if unit_family {
        is_pure(&c, PURE_TOL)
    } else {
        (purity(&rho) - 1.0).abs() <= PURE_TOL
    };
    Ok(StateReport {
        coeffs: S3Coeffs {
            a: sig12(c.a),
            b: sig12(c.b),
            c: sig12(c.c),
            d: sig12(c.d),
        },
        eigenvalues: sig12_all(rho.eigenvalues()),
        pure,
        criterion_r: criterion_r.map(sig12),
        concurrence_closed: closed.map(sig12),
        concurrence_oracle: sig12(oracle.concurrence),
        eof: sig12(eof_from_concurrence(oracle.concurrence)),
    })
}

/// A state before and after a non-selective measurement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub axis: MeasurementAxis,
    pub before: StateReport,
    pub after: StateReport,
    /// Change of the closed-form concurrence.
    pub delta_c: f64,
}

pub fn measure_report(c: &S3Coeffs, axis: MeasurementAxis) -> crate::Result<MeasureReport> {
    let before = state_report(c)?;
    let after_coeffs = measure_update(c, axis)?;
    let after = state_report(&after_coeffs)?;
    let closed = |s: S3Coeffs| concurrence_closed(&s);
    let delta_c = closed(after_coeffs)? - closed(*c)?;
    Ok(MeasureReport {
        axis,
        before,
        after,
        delta_c: sig12(delta_c),
    })
}

/// One row of a gain sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub t: TParam,
    pub c_before: f64,
    pub c_after: f64,
    pub delta_c: f64,
}

impl From<GainResult> for SweepRecord {
    fn from(g: GainResult) -> Self {
        SweepRecord {
            t: match g.t_star {
                TParam::Finite(t) => TParam::Finite(sig12(t)),
                inf => inf,
            },
            c_before: sig12(g.c_before),
            c_after: sig12(g.c_after),
            delta_c: sig12(g.delta_c),
        }
    }
}

/// `points` records at `θ = π(k/N − ½)`, `k = 1..=N`, ending at infinity.
pub fn sweep_records(axis: MeasurementAxis, points: usize) -> Vec<SweepRecord> {
    (1..=points).map(|k| gain(axis, grid_param(k, points)).into()).collect()
}

#[derive(Serialize)]
struct SweepJson {
    axis: MeasurementAxis,
    records: Vec<SweepRecord>,
    max: SweepRecord,
}

fn t_text(t: TParam) -> String {
    match t {
        TParam::Finite(t) => num(t),
        TParam::Infinity => "inf".to_string(),
    }
}

fn sweep_csv(records: &[SweepRecord], max: &SweepRecord) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["t", "c_before", "c_after", "delta_c"])?;
    for r in records {
        w.write_record([t_text(r.t), num(r.c_before), num(r.c_after), num(r.delta_c)])?;
    }
    let mut text = String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)
        .expect("csv output is UTF-8");
    text.push_str(&format!(
        "# max t={},c_before={},c_after={},delta_c={}\n",
        t_text(max.t),
        num(max.c_before),
        num(max.c_after),
        num(max.delta_c)
    ));
    Ok(text)
}

#[derive(Serialize)]
struct CheckJson<'a> {
    world: &'static str,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    subgroups: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s3_subgroups: Option<usize>,
    checks: &'a RelationReport,
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "n/a".to_string(), num)
}

fn state_text(r: &StateReport) -> String {
    let c = &r.coeffs;
    let [e0, e1, e2, e3] = r.eigenvalues.map(num);
    format!(
        "coeffs              a={} b={} c={} d={}\n\
         eigenvalues         {e0} {e1} {e2} {e3}\n\
         pure                {}\n\
         criterion R         {}\n\
         concurrence closed  {}\n\
         concurrence oracle  {}\n\
         eof                 {}\n",
        num(c.a),
        num(c.b),
        num(c.c),
        num(c.d),
        r.pure,
        opt(r.criterion_r),
        opt(r.concurrence_closed),
        num(r.concurrence_oracle),
        num(r.eof)
    )
}

/// Runs the CLI with `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match cli.command {
        Command::Check { world, format } => cmd_check(world, format, out),
        Command::State { state, format } => cmd_state(&state, format, out, err),
        Command::Measure { axis, state, format } => cmd_measure(axis, &state, format, out, err),
        Command::Sweep { axis, points, out: path, format } => {
            cmd_sweep(axis, points, path, format, out, err)
        }
    }
}

fn cmd_check(world: World, format: ReportFormat, out: &mut dyn Write) -> i32 {
    let (name, report) = match world {
        World::X => ("x", check_x_relations()),
        World::S3 => ("s3", check_s3_relations()),
        World::S4 => ("s4", check_s4_facts()),
    };
    let (subgroups, s3_subgroups) = if world == World::S4 {
        let subs = enumerate_subgroups();
        let s3 = subs.iter().filter(|h| classify(h) == GroupKind::S3).count();
        (Some(subs.len()), Some(s3))
    } else {
        (None, None)
    };
    let passed = report.all_passed();
    let text = match format {
        ReportFormat::Json => to_json(&CheckJson {
            world: name,
            passed,
            subgroups,
            s3_subgroups,
            checks: &report,
        }) + "\n",
        ReportFormat::Text => {
            let mut s = String::new();
            for c in &report.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                match &c.detail {
                    Some(d) => s.push_str(&format!("{status}  {} ({d})\n", c.name)),
                    None => s.push_str(&format!("{status}  {}\n", c.name)),
                }
            }
            if let (Some(n), Some(k)) = (subgroups, s3_subgroups) {
                s.push_str(&format!("{n} subgroups, {k} of type S3\n"));
            }
            let failed = report.failures().count();
            s.push_str(&format!("{name}: {} checks, {failed} failed\n", report.len()));
            s
        }
    };
    let _ = out.write_all(text.as_bytes());
    if passed {
        EXIT_OK
    } else {
        EXIT_INVALID
    }
}

fn cmd_state(args: &StateArgs, format: ReportFormat, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let coeffs = match args.coeffs() {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    match state_report(&coeffs) {
        Ok(r) => {
            let text = match format {
                ReportFormat::Json => to_json(&r) + "\n",
                ReportFormat::Text => state_text(&r),
            };
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn cmd_measure(
    axis: MeasurementAxis,
    args: &StateArgs,
    format: ReportFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let coeffs = match args.coeffs() {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    match measure_report(&coeffs, axis) {
        Ok(r) => {
            let text = match format {
                ReportFormat::Json => to_json(&r) + "\n",
                ReportFormat::Text => format!(
                    "measured {}\n\n[before]\n{}\n[after]\n{}\ndelta C (closed form)  {}\n",
                    r.axis,
                    state_text(&r.before),
                    state_text(&r.after),
                    r.delta_c
                ),
            };
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn cmd_sweep(
    axis: MeasurementAxis,
    points: usize,
    path: Option<PathBuf>,
    format: SweepFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    if points < 2 {
        let _ = writeln!(err, "error: --points must be at least 2");
        return EXIT_USAGE;
    }
    let records = sweep_records(axis, points);
    let max = SweepRecord::from(maximize_gain(axis));
    let text = match format {
        SweepFormat::Json => to_json(&SweepJson { axis, records, max }) + "\n",
        SweepFormat::Csv => match sweep_csv(&records, &max) {
            Ok(s) => s,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_INVALID;
            }
        },
    };
    match path {
        Some(p) => {
            if let Err(e) = fs::write(&p, text) {
                let _ = writeln!(err, "error: cannot write {}: {e}", p.display());
                return EXIT_USAGE;
            }
            EXIT_OK
        }
        None => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
    }
}
