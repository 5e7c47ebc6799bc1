//! The `genus` command line.
//!
//! Exit codes: 0 on success, 1 on usage or validation errors, 2 when a
//! mathematical check ran and failed.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::catalog::{CharacteristicSeries, SeriesSpec, DEFAULT_ORDER, FAMILIES};
use crate::chern::{evaluate_genus, multiplicative_sequence, ChernData};
use crate::error::{GenusError, Result};
use crate::gaussian::GaussianRational;
use crate::localization::{cpn_fixed_points, equivariant_genus, FixedPointSet};
use crate::rigidity::{ar_check, classify, classify_oriented, GtReport, Verdict};
use crate::series::SeriesFile;

type G = GaussianRational;

/// Environment variable overriding the default construction order.
pub const ORDER_ENV: &str = "GENUS_DEFAULT_ORDER";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "genus", version, about = "Exact Hirzebruch genera, localization and rigidity")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List series families and their parameters.
    Catalog,
    /// Print the coefficients of a characteristic series.
    Expand {
        #[command(flatten)]
        series: SeriesArg,
        #[arg(long)]
        order: Option<usize>,
        /// Also check the Novikov correspondence (exit 2 on mismatch).
        #[arg(long)]
        novikov: bool,
    },
    /// Print the genus of ℂPⁿ.
    Cpn {
        #[command(flatten)]
        series: SeriesArg,
        #[arg(long)]
        n: usize,
        /// Cross-check against the family's closed form (exit 2 on mismatch).
        #[arg(long)]
        closed_form: bool,
    },
    /// Evaluate the multiplicative sequence on Chern data, or dump K_N.
    #[command(group(ArgGroup::new("target").required(true).args(["data", "kn"])))]
    Chern {
        #[command(flatten)]
        series: SeriesArg,
        /// Chern-number file.
        #[arg(long)]
        data: Option<PathBuf>,
        /// Print the polynomial K_N.
        #[arg(long)]
        kn: Option<usize>,
    },
    /// Print the localization sum of a circle action.
    #[command(group(ArgGroup::new("points").required(true).args(["input", "weights"])))]
    Localize {
        #[command(flatten)]
        series: SeriesArg,
        /// Fixed-point file.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Weights w_0,…,w_n of a linear action on ℂPⁿ.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Option<Vec<i64>>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Sample algebraic rigidity on ℂPᵐ weight tuples (exit 2 on failure).
    Rigidity {
        #[command(flatten)]
        series: SeriesArg,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decide whether a series is Generalized Todd.
    Classify {
        #[command(flatten)]
        series: SeriesArg,
        /// Use the oriented (even-series) classification.
        #[arg(long)]
        oriented: bool,
        /// Exit 2 unless the series is GT.
        #[arg(long)]
        expect_gt: bool,
        #[arg(long)]
        order: Option<usize>,
    },
}

#[derive(Debug, Args)]
struct SeriesArg {
    /// Series spec: todd, euler:a=1/2, ty:y=-1, txy:x=2,y=3, dab:a=1,b=1/2,
    /// gab:a=1,b=0, file:PATH.
    #[arg(long, value_name = "SPEC")]
    series: String,
}

impl SeriesArg {
    fn spec(&self) -> Result<SeriesSpec> {
        self.series.parse().map_err(|e| GenusError::Parse(format!("--series `{}`: {e}", self.series)))
    }

    fn construct(&self, order: usize) -> Result<CharacteristicSeries<G>> {
        self.spec()?.construct(order)
    }
}

/// Failure of a subcommand: bad input, or a check that ran and failed.
enum Failure {
    Invalid(GenusError),
    Check,
}

impl From<GenusError> for Failure {
    fn from(e: GenusError) -> Self {
        Failure::Invalid(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(source: std::io::Error) -> Self {
        Failure::Invalid(GenusError::Io { path: "<stdout>".into(), source })
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Check) => EXIT_CHECK_FAILED,
        Err(Failure::Invalid(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn default_order() -> Result<usize> {
    match std::env::var(ORDER_ENV) {
        Err(_) => Ok(DEFAULT_ORDER),
        Ok(v) => v.trim().parse().map_err(|_| GenusError::Parse(format!("{ORDER_ENV}: expected an integer, got `{v}`"))),
    }
}

fn order_or_default(order: Option<usize>) -> Result<usize> {
    order.map_or_else(default_order, Ok)
}

fn print_json(out: &mut dyn Write, value: &impl Serialize) -> Outcome {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("serializable"))?;
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Catalog => catalog(json, out),
        Command::Expand { series, order, novikov } => expand(json, out, series, *order, *novikov),
        Command::Cpn { series, n, closed_form } => cpn(json, out, series, *n, *closed_form),
        Command::Chern { series, data, kn } => chern(json, out, series, data.as_ref(), *kn),
        Command::Localize { series, input, weights, order } => {
            localize(json, out, series, input.as_ref(), weights.as_deref(), *order)
        }
        Command::Rigidity { series, max_n, order, trials, seed } => {
            rigidity(json, out, series, *max_n, *order, *trials, *seed)
        }
        Command::Classify { series, oriented, expect_gt, order } => {
            classify_cmd(json, out, series, *oriented, *expect_gt, *order)
        }
    }
}

fn catalog(json: bool, out: &mut dyn Write) -> Outcome {
    if json {
        let rows: Vec<_> =
            FAMILIES.iter().map(|f| json!({"name": f.name, "params": f.params, "formula": f.formula})).collect();
        return print_json(out, &rows);
    }
    for f in FAMILIES {
        let sig = if f.name == "file" {
            "file:PATH".to_string()
        } else if f.params.is_empty() {
            f.name.to_string()
        } else {
            let params: Vec<String> = f.params.iter().map(|p| format!("{p}=?")).collect();
            format!("{}:{}", f.name, params.join(","))
        };
        writeln!(out, "{sig:<16} {}", f.formula)?;
    }
    Ok(())
}

fn expand(json: bool, out: &mut dyn Write, series: &SeriesArg, order: Option<usize>, novikov: bool) -> Outcome {
    let order = order_or_default(order)?;
    let h = series.construct(order)?;
    let check = if novikov { Some(h.verify_novikov(h.order())?) } else { None };
    let file = SeriesFile::from_series(&h.series().to_laurent());
    if json {
        match &check {
            None => print_json(out, &file)?,
            Some(c) => print_json(out, &json!({"series": file, "novikov": c}))?,
        }
    } else {
        let coeffs: Vec<String> = h.series().coeffs().iter().map(|c| c.to_string()).collect();
        writeln!(out, "{}", coeffs.join(", "))?;
        if let Some(c) = &check {
            match c.first_mismatch {
                None => writeln!(out, "novikov: holds to order {}", c.order)?,
                Some(n) => writeln!(out, "novikov: FAILS at h_{n} (order {})", c.order)?,
            }
        }
    }
    match check {
        Some(c) if !c.holds => Err(Failure::Check),
        _ => Ok(()),
    }
}

fn cpn(json: bool, out: &mut dyn Write, series: &SeriesArg, n: usize, closed_form: bool) -> Outcome {
    let spec = series.spec()?;
    let h = spec.construct(default_order()?.max(n).max(2))?;
    let value = h.h_n(n)?;
    let closed = if closed_form { Some(spec.closed_form_cpn(n)?) } else { None };
    let agrees = closed.as_ref().is_none_or(|c| *c == value);
    if json {
        print_json(out, &json!({"n": n, "value": value, "closed_form": closed, "agrees": agrees}))?;
    } else {
        writeln!(out, "{value}")?;
        if let Some(c) = &closed {
            let status = if agrees { "agrees" } else { "MISMATCH" };
            writeln!(out, "closed form: {c} ({status})")?;
        }
    }
    if agrees {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn chern(json: bool, out: &mut dyn Write, series: &SeriesArg, data: Option<&PathBuf>, kn: Option<usize>) -> Outcome {
    if let Some(path) = data {
        let display = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| GenusError::Io { path: display.clone(), source })?;
        let numbers = ChernData::<G>::from_json(&text)
            .map_err(|e| GenusError::MalformedFile { path: display, message: e.to_string() })?;
        let n = numbers.dimension();
        let h = series.construct(default_order()?.max(n).max(2))?;
        let value = evaluate_genus(&multiplicative_sequence(&h, n)?, &numbers)?;
        if json {
            print_json(out, &json!({"dimension": n, "value": value}))
        } else {
            writeln!(out, "{value}")?;
            Ok(())
        }
    } else {
        let n = kn.expect("clap enforces --data or --kn");
        let h = series.construct(default_order()?.max(n).max(2))?;
        let k = multiplicative_sequence(&h, n)?;
        if json {
            writeln!(out, "{}", k.to_json())?;
        } else {
            writeln!(out, "{k}")?;
        }
        Ok(())
    }
}

fn localize(
    json: bool,
    out: &mut dyn Write,
    series: &SeriesArg,
    input: Option<&PathBuf>,
    weights: Option<&[i64]>,
    order: Option<usize>,
) -> Outcome {
    let fps = match (input, weights) {
        (Some(path), _) => {
            let display = path.display().to_string();
            let text =
                std::fs::read_to_string(path).map_err(|source| GenusError::Io { path: display.clone(), source })?;
            FixedPointSet::from_json(&text).map_err(|e| GenusError::MalformedFile { path: display, message: e.to_string() })?
        }
        (None, Some(w)) => cpn_fixed_points(w).map_err(|e| GenusError::Parse(format!("--weights: {e}")))?,
        (None, None) => unreachable!("clap enforces --input or --weights"),
    };
    let order = order_or_default(order)?;
    let h = series.construct(order + fps.dimension())?;
    let s = equivariant_genus(&h, &fps, order as i64)?;
    if json {
        print_json(out, &SeriesFile::from_series(&s))
    } else {
        writeln!(out, "{s}")?;
        match s.first_nonconstant() {
            None => writeln!(out, "constant: yes")?,
            Some((k, c)) => writeln!(out, "constant: no (degree {k} coefficient {c})")?,
        }
        Ok(())
    }
}

fn rigidity(
    json: bool,
    out: &mut dyn Write,
    series: &SeriesArg,
    max_n: usize,
    order: usize,
    trials: usize,
    seed: u64,
) -> Outcome {
    let h = series.construct(order + max_n)?;
    let report = ar_check(&h, max_n, order, trials, seed)?;
    if json {
        print_json(out, &report)?;
    } else {
        let verdict = match report.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
        };
        writeln!(out, "verdict: {verdict}")?;
        writeln!(out, "max_n: {}, order: {}, trials: {}, seed: {}", max_n, order, trials, seed)?;
        writeln!(out, "tuples checked: {}", report.tuples_checked.len())?;
        if let Some(w) = &report.witness {
            let weights: Vec<String> = w.weights.iter().map(|x| x.to_string()).collect();
            writeln!(out, "witness: weights ({}), degree {}, coefficient {}", weights.join(", "), w.degree, w.coefficient)?;
        }
    }
    match report.verdict {
        Verdict::Pass => Ok(()),
        Verdict::Fail => Err(Failure::Check),
    }
}

fn write_report(out: &mut dyn Write, r: &GtReport) -> std::io::Result<()> {
    let opt = |v: &Option<G>| v.as_ref().map_or("none".to_string(), |x| x.to_string());
    writeln!(out, "gt: {}", if r.is_gt { "yes" } else { "no" })?;
    writeln!(out, "case: {:?}", r.case)?;
    writeln!(out, "order: {}", r.order)?;
    writeln!(out, "r1: {}", r.r1)?;
    writeln!(out, "h2: {}", r.h2)?;
    writeln!(out, "d: {}", r.d)?;
    writeln!(out, "sqrt_d: {}", opt(&r.sqrt_d))?;
    writeln!(out, "d_negative_rational: {}", r.d_negative_rational)?;
    let spec = |s: &Option<SeriesSpec>| s.as_ref().map_or("none".to_string(), |x| x.to_string());
    writeln!(out, "closed_form: {}", spec(&r.closed_form))?;
    writeln!(out, "g_form: {}", spec(&r.g_form))?;
    writeln!(out, "witness: {}", r.witness.map_or("none".to_string(), |d| format!("degree {d}")))?;
    if let Some(o) = &r.oriented {
        let kind = serde_json::to_value(o.kind).expect("serializable");
        writeln!(out, "oriented: a t {}(a t), a = {}", kind.as_str().unwrap_or_default(), o.a)?;
    }
    Ok(())
}

fn classify_cmd(
    json: bool,
    out: &mut dyn Write,
    series: &SeriesArg,
    oriented: bool,
    expect_gt: bool,
    order: Option<usize>,
) -> Outcome {
    let h = series.construct(order_or_default(order)?)?;
    let result = if oriented { classify_oriented(&h) } else { classify(&h) };
    let is_gt = match result {
        Ok(report) => {
            if json {
                print_json(out, &report)?;
            } else {
                write_report(out, &report)?;
            }
            report.is_gt
        }
        Err(GenusError::NotEven { degree }) => {
            if json {
                print_json(out, &json!({"is_gt": false, "even": false, "odd_degree": degree}))?;
            } else {
                writeln!(out, "gt: no")?;
                writeln!(out, "not even: degree {degree} coefficient is nonzero")?;
            }
            false
        }
        Err(e) => return Err(e.into()),
    };
    if expect_gt && !is_gt {
        Err(Failure::Check)
    } else {
        Ok(())
    }
}
