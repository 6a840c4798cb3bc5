//! `mllp`: command-line surface over the toolkit — sample-path simulation,
//! density / jump-intensity / moment / Laplace-transform tables, and the
//! statistical verification suite.
//!
//! Conventions shared by all subcommands:
//! * CSV is the primary output: a header row, `.` decimal separator, floats
//!   printed with 17 significant digits so every value round-trips exactly;
//!   `--format json` wraps the same rows as an array of objects.
//! * `--out FILE` redirects the table to a file; otherwise it goes to
//!   standard output.
//! * The seed comes from `--seed`, else the `MLLP_SEED` environment
//!   variable, else 0; the resolved value and its origin are echoed in the
//!   simulation manifest so a run can be reproduced from its artifacts.
//! * Exit codes: 0 success, 1 verification failure (or refused table rows
//!   under `--strict`), 2 usage/configuration errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mllp_core::analytics;
use mllp_core::process::{
    simulate_mllp_path, simulate_tempered_mllp_path, ProcessParams, TemperedParams, TimeGrid,
};
use mllp_core::randvar::RandomSource;
use mllp_core::specfun::SeriesConfig;
use mllp_core::verify::{self, SuiteConfig};
use mllp_core::AnalyticsError;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "mllp",
    version,
    about = "Mittag-Leffler Levy process toolkit: simulation, analytics, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate sample paths of the process (tempered when --mu is given).
    Simulate(SimulateArgs),
    /// Tabulate the marginal density f(x, t).
    Density(DensityArgs),
    /// Tabulate the Levy (jump-intensity) density nu(x).
    Levy(LevyArgs),
    /// Tabulate fractional moments E[M(t)^q] (or tempered mean/variance).
    Moments(MomentsArgs),
    /// Tabulate the Laplace transform E[exp(-u M(t))].
    Laplace(LaplaceArgs),
    /// Run the statistical verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct SimulateArgs {
    /// Stability index in (0, 1].
    #[arg(long)]
    alpha: f64,
    /// Rate of the gamma clock (> 0).
    #[arg(long)]
    lambda: f64,
    /// Tempering rate; when present the tempered process is simulated.
    #[arg(long)]
    mu: Option<f64>,
    /// Final time of the simulation grid.
    #[arg(long, default_value_t = 1.0)]
    horizon: f64,
    /// Number of equal time steps.
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    /// Number of independent paths.
    #[arg(long, default_value_t = 1)]
    paths: usize,
    /// RNG seed (falls back to MLLP_SEED, then 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Write the table here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

/// Evaluation-point flags shared by `density` and `levy`: either explicit
/// `--x` points or an inclusive linear grid `--x-min/--x-max/--n`.
#[derive(Args)]
struct XGridArgs {
    /// Evaluation points (repeatable or comma-separated).
    #[arg(long, value_delimiter = ',')]
    x: Vec<f64>,
    /// Start of a linear grid (requires --x-max and --n).
    #[arg(long, conflicts_with = "x")]
    x_min: Option<f64>,
    /// End of a linear grid.
    #[arg(long, conflicts_with = "x")]
    x_max: Option<f64>,
    /// Number of grid points.
    #[arg(long, conflicts_with = "x")]
    n: Option<usize>,
}

impl XGridArgs {
    fn points(&self) -> Result<Vec<f64>, CliError> {
        grid_points(&self.x, self.x_min, self.x_max, self.n, "x")
    }
}

#[derive(Args)]
struct DensityArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    lambda: f64,
    /// Time at which the marginal density is evaluated.
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    #[command(flatten)]
    grid: XGridArgs,
    /// Use the exponentially tempered family (requires --mu).
    #[arg(long, requires = "mu")]
    tempered: bool,
    /// Tempering rate (requires --tempered).
    #[arg(long, requires = "tempered")]
    mu: Option<f64>,
    /// Exit with status 1 if any row was refused (NaN sentinel).
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct LevyArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    lambda: f64,
    #[command(flatten)]
    grid: XGridArgs,
    #[arg(long, requires = "mu")]
    tempered: bool,
    #[arg(long, requires = "tempered")]
    mu: Option<f64>,
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct MomentsArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    /// Moment orders, each in (0, alpha) (repeatable or comma-separated).
    #[arg(long, value_delimiter = ',')]
    q: Vec<f64>,
    /// Tabulate the tempered family's mean and variance instead of
    /// fractional moments (requires --mu, conflicts with --q).
    #[arg(long, requires = "mu", conflicts_with = "q")]
    tempered: bool,
    #[arg(long, requires = "tempered")]
    mu: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct LaplaceArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    /// Transform arguments (repeatable or comma-separated).
    #[arg(long, value_delimiter = ',')]
    u: Vec<f64>,
    /// Start of a linear grid of transform arguments.
    #[arg(long, conflicts_with = "u")]
    u_min: Option<f64>,
    /// End of a linear grid.
    #[arg(long, conflicts_with = "u")]
    u_max: Option<f64>,
    /// Number of grid points.
    #[arg(long, conflicts_with = "u")]
    n: Option<usize>,
    #[arg(long, requires = "mu")]
    tempered: bool,
    #[arg(long, requires = "tempered")]
    mu: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite configuration file (default: the checked-in configuration).
    #[arg(long)]
    config: Option<PathBuf>,
    /// RNG seed (falls back to MLLP_SEED, then 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON-lines reports here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Errors carrying their exit status: usage/config problems exit 2,
/// runtime problems exit 1.
enum CliError {
    Usage(String),
    Runtime(String),
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn runtime<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Runtime(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(a) => cmd_simulate(a),
        Command::Density(a) => cmd_density(a),
        Command::Levy(a) => cmd_levy(a),
        Command::Moments(a) => cmd_moments(a),
        Command::Laplace(a) => cmd_laplace(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

/// Floats are printed with 17 significant digits (1 before the decimal
/// point, 16 after), which round-trips every f64 exactly.
fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Resolved seed and where it came from (`flag`, `env`, or `default`),
/// echoed in manifests for reproducibility.
fn resolve_seed(flag: Option<u64>) -> Result<(u64, &'static str), CliError> {
    if let Some(s) = flag {
        return Ok((s, "flag"));
    }
    match std::env::var("MLLP_SEED") {
        Ok(v) => v.trim().parse().map(|s| (s, "env")).map_err(|_| {
            CliError::Usage(format!("MLLP_SEED must be an unsigned integer, got {v:?}"))
        }),
        Err(std::env::VarError::NotPresent) => Ok((0, "default")),
        Err(e) => Err(CliError::Usage(format!("MLLP_SEED: {e}"))),
    }
}

fn grid_points(
    explicit: &[f64],
    min: Option<f64>,
    max: Option<f64>,
    n: Option<usize>,
    flag: &str,
) -> Result<Vec<f64>, CliError> {
    if !explicit.is_empty() {
        return Ok(explicit.to_vec());
    }
    match (min, max, n) {
        (Some(lo), Some(hi), Some(n)) => {
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return Err(CliError::Usage(format!(
                    "--{flag}-min/--{flag}-max must be finite with min <= max"
                )));
            }
            if n == 0 {
                return Err(CliError::Usage("--n must be at least 1".to_string()));
            }
            if n == 1 {
                return Ok(vec![lo]);
            }
            let step = (hi - lo) / (n - 1) as f64;
            Ok((0..n).map(|i| lo + i as f64 * step).collect())
        }
        _ => Err(CliError::Usage(format!(
            "provide --{flag} points or all of --{flag}-min, --{flag}-max, --n"
        ))),
    }
}

/// One output cell; `Float(NaN)` is the refused-row sentinel (NaN in CSV,
/// null in JSON).
enum Cell {
    Float(f64),
    Int(u64),
    Text(&'static str),
}

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Float(x) => fmt_float(*x),
                    Cell::Int(k) => k.to_string(),
                    Cell::Text(s) => (*s).to_string(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn json(&self, command: &str, params: &serde_json::Value) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let v = match cell {
                        Cell::Float(x) => serde_json::Number::from_f64(*x)
                            .map_or(serde_json::Value::Null, serde_json::Value::Number),
                        Cell::Int(k) => json!(k),
                        Cell::Text(s) => json!(s),
                    };
                    obj.insert((*name).to_string(), v);
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "command": command,
            "params": params,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("table serialization cannot fail");
        s.push('\n');
        s
    }

    fn render(&self, format: Format, command: &str, params: &serde_json::Value) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(command, params),
        }
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_simulate(a: SimulateArgs) -> Result<ExitCode, CliError> {
    let params = ProcessParams::new(a.alpha, a.lambda).map_err(usage)?;
    let tempered =
        a.mu.map(|mu| TemperedParams::new(params, mu))
            .transpose()
            .map_err(usage)?;
    let grid = TimeGrid::new(a.horizon, a.steps).map_err(usage)?;
    if a.paths == 0 {
        return Err(CliError::Usage("--paths must be at least 1".to_string()));
    }
    let (seed, seed_source) = resolve_seed(a.seed)?;
    let mut src = RandomSource::from_seed(seed);

    let times = grid.times();
    let multi = a.paths > 1;
    let columns = if multi {
        vec!["path", "t", "value"]
    } else {
        vec!["t", "value"]
    };
    let mut rows = Vec::with_capacity(a.paths * a.steps);
    for path_id in 1..=a.paths {
        let path = match &tempered {
            Some(tp) => simulate_tempered_mllp_path(&mut src, tp, &grid),
            None => simulate_mllp_path(&mut src, &params, &grid),
        }
        .map_err(runtime)?;
        for (&t, &v) in times.iter().zip(&path.values) {
            let mut row = Vec::with_capacity(3);
            if multi {
                row.push(Cell::Int(path_id as u64));
            }
            row.push(Cell::Float(t));
            row.push(Cell::Float(v));
            rows.push(row);
        }
    }
    let table = Table { columns, rows };

    let params_echo = json!({
        "alpha": a.alpha,
        "lambda": a.lambda,
        "mu": a.mu,
        "horizon": a.horizon,
        "steps": a.steps,
        "paths": a.paths,
    });
    write_output(&a.out, &table.render(a.format, "simulate", &params_echo))?;

    // Manifest: everything needed to reproduce the run byte for byte. It
    // goes next to the output file, or to stderr when the table went to
    // standard output.
    let manifest = json!({
        "command": "simulate",
        "version": env!("CARGO_PKG_VERSION"),
        "seed": seed,
        "seed_source": seed_source,
        "format": match a.format { Format::Csv => "csv", Format::Json => "json" },
        "params": params_echo,
        "out": a.out.as_ref().map(|p| p.display().to_string()),
    });
    let manifest_text = format!(
        "{}\n",
        serde_json::to_string_pretty(&manifest).expect("manifest serialization cannot fail")
    );
    match &a.out {
        Some(p) => {
            let mpath = p.with_extension("manifest.json");
            std::fs::write(&mpath, manifest_text)
                .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", mpath.display())))?;
        }
        None => eprint!("{manifest_text}"),
    }
    Ok(ExitCode::SUCCESS)
}

/// Shared driver for the pointwise table subcommands: validates the
/// points, evaluates, turns refusals (`TermCapExceeded` / integration
/// failures) into NaN sentinel rows, and applies `--strict`.
#[allow(clippy::too_many_arguments)]
fn pointwise_table(
    points: &[f64],
    positive: bool,
    eval: impl Fn(f64) -> Result<f64, AnalyticsError>,
    columns: Vec<&'static str>,
    strict: bool,
    out: &Option<PathBuf>,
    format: Format,
    command: &str,
    params_echo: &serde_json::Value,
) -> Result<ExitCode, CliError> {
    for &x in points {
        if !x.is_finite() || (positive && x <= 0.0) || (!positive && x < 0.0) {
            return Err(CliError::Usage(format!(
                "evaluation point {x} is outside the domain ({})",
                if positive { "> 0" } else { ">= 0" }
            )));
        }
    }
    let mut refused = 0usize;
    let mut rows = Vec::with_capacity(points.len());
    for &x in points {
        let cell = match eval(x) {
            Ok(v) => Cell::Float(v),
            Err(AnalyticsError::TermCapExceeded { .. } | AnalyticsError::IntegrationFailure(_)) => {
                refused += 1;
                Cell::Float(f64::NAN)
            }
            Err(e) => return Err(usage(e)),
        };
        rows.push(vec![Cell::Float(x), cell]);
    }
    let table = Table { columns, rows };
    write_output(out, &table.render(format, command, params_echo))?;
    if refused > 0 {
        eprintln!(
            "warning: {refused} of {} rows were refused (NaN sentinel): \
             the evaluation could not reach its accuracy target there",
            points.len()
        );
        if strict {
            return Ok(ExitCode::from(1));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn tempered_params(
    base: ProcessParams,
    tempered: bool,
    mu: Option<f64>,
) -> Result<Option<TemperedParams>, CliError> {
    if !tempered {
        return Ok(None);
    }
    let mu = mu.expect("clap: --tempered requires --mu");
    Ok(Some(TemperedParams::new(base, mu).map_err(usage)?))
}

fn cmd_density(a: DensityArgs) -> Result<ExitCode, CliError> {
    let p = ProcessParams::new(a.alpha, a.lambda).map_err(usage)?;
    let tp = tempered_params(p, a.tempered, a.mu)?;
    let cfg = SeriesConfig::default();
    let points = a.grid.points()?;
    let t = a.t;
    let params_echo = json!({
        "alpha": a.alpha, "lambda": a.lambda, "t": t,
        "tempered": a.tempered, "mu": a.mu,
    });
    pointwise_table(
        &points,
        true,
        |x| match &tp {
            Some(tp) => analytics::tempered_density(x, t, tp, &cfg).map(|d| d.value),
            None => analytics::mllp_density(x, t, &p, &cfg).map(|d| d.value),
        },
        vec!["x", "f"],
        a.strict,
        &a.out,
        a.format,
        "density",
        &params_echo,
    )
}

fn cmd_levy(a: LevyArgs) -> Result<ExitCode, CliError> {
    let p = ProcessParams::new(a.alpha, a.lambda).map_err(usage)?;
    let tp = tempered_params(p, a.tempered, a.mu)?;
    let cfg = SeriesConfig::default();
    let points = a.grid.points()?;
    let params_echo = json!({
        "alpha": a.alpha, "lambda": a.lambda,
        "tempered": a.tempered, "mu": a.mu,
    });
    pointwise_table(
        &points,
        true,
        |x| match &tp {
            Some(tp) => analytics::tempered_levy_density(x, tp, &cfg),
            None => analytics::mllp_levy_density(x, &p, &cfg),
        },
        vec!["x", "nu"],
        a.strict,
        &a.out,
        a.format,
        "levy",
        &params_echo,
    )
}

fn cmd_moments(a: MomentsArgs) -> Result<ExitCode, CliError> {
    let p = ProcessParams::new(a.alpha, a.lambda).map_err(usage)?;
    let params_echo = json!({
        "alpha": a.alpha, "lambda": a.lambda, "t": a.t,
        "tempered": a.tempered, "mu": a.mu,
    });
    if a.tempered {
        let tp = tempered_params(p, true, a.mu)?.expect("tempered flag set");
        let m = analytics::tempered_moments(a.t, &tp).map_err(usage)?;
        let table = Table {
            columns: vec!["stat", "value"],
            rows: vec![
                vec![Cell::Text("mean"), Cell::Float(m.mean)],
                vec![Cell::Text("variance"), Cell::Float(m.variance)],
            ],
        };
        write_output(&a.out, &table.render(a.format, "moments", &params_echo))?;
        return Ok(ExitCode::SUCCESS);
    }
    if a.q.is_empty() {
        return Err(CliError::Usage(
            "provide at least one --q moment order".to_string(),
        ));
    }
    let mut rows = Vec::with_capacity(a.q.len());
    for &q in &a.q {
        let m = analytics::fractional_moment(q, a.t, &p).map_err(usage)?;
        rows.push(vec![Cell::Float(q), Cell::Float(m)]);
    }
    let table = Table {
        columns: vec!["q", "moment"],
        rows,
    };
    write_output(&a.out, &table.render(a.format, "moments", &params_echo))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_laplace(a: LaplaceArgs) -> Result<ExitCode, CliError> {
    let p = ProcessParams::new(a.alpha, a.lambda).map_err(usage)?;
    let tp = tempered_params(p, a.tempered, a.mu)?;
    let points = grid_points(&a.u, a.u_min, a.u_max, a.n, "u")?;
    let t = a.t;
    let params_echo = json!({
        "alpha": a.alpha, "lambda": a.lambda, "t": t,
        "tempered": a.tempered, "mu": a.mu,
    });
    pointwise_table(
        &points,
        false,
        |u| match &tp {
            Some(tp) => analytics::tempered_laplace(u, t, tp),
            None => analytics::mllp_laplace(u, t, &p),
        },
        vec!["u", "value"],
        false,
        &a.out,
        a.format,
        "laplace",
        &params_echo,
    )
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode, CliError> {
    let (seed, _) = resolve_seed(a.seed)?;
    let config = match &a.config {
        // An unreadable or invalid config is a usage error (exit 2).
        Some(p) => SuiteConfig::from_path(p).map_err(usage)?,
        None => SuiteConfig::default_config(),
    };
    let run = verify::run_suite(seed, &config).map_err(runtime)?;
    write_output(&a.out, &run.json_lines())?;
    // The summary table goes to stdout when the reports went to a file,
    // otherwise to stderr so stdout stays pure JSON lines.
    match &a.out {
        Some(_) => print!("{}", run.summary_table()),
        None => eprint!("{}", run.summary_table()),
    }
    Ok(if run.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
