mod curve_file;
mod render;

use std::fmt::Display;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use glcurve_core::bench::{eval_integral, run_bench, BenchConfig, BenchOutcome, GridSpec};
use glcurve_core::oracle::{error_report, EvalMethod};
use glcurve_core::{eval_many, eval_many_parallel, legendre_roots, prepare, GlError};

use curve_file::read_curve;

/// Gauss-Legendre curves: roots, evaluation, accuracy and timing.
#[derive(Parser)]
#[command(name = "glcurve", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the roots of P_N, one per line.
    Roots { n: usize },
    /// Evaluate a curve file on a grid or at given parameters.
    Eval(EvalArgs),
    /// Maximum and mean basis error of every method against the extended reference.
    Compare {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 201)]
        grid_size: usize,
    },
    /// Time prepare-once, evaluate-grid over random curves.
    Bench(BenchArgs),
    /// Write a planar curve and its control polygon as SVG.
    Render {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value = "jacobi1")]
        method: EvalMethod,
        #[arg(long, default_value_t = 400)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    curve: PathBuf,
    #[arg(long, default_value = "jacobi1")]
    method: EvalMethod,
    /// Number of uniform parameters over [-1, 1], endpoints included.
    #[arg(long, conflicts_with = "at", required_unless_present = "at")]
    grid: Option<usize>,
    /// Comma separated parameters.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    at: Option<Vec<f64>>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// `a..b` (inclusive) or a comma separated list.
    #[arg(long, default_value = "1..15", value_parser = parse_degrees)]
    degrees: Degrees,
    #[arg(long, default_value_t = 100)]
    curves: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seconds allowed per integral row; later degrees are skipped once exceeded.
    #[arg(long)]
    budget: Option<f64>,
    /// Comma separated subset of power, legendre, jacobi1, integral.
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<EvalMethod>>,
    #[arg(long, default_value_t = 2)]
    dimension: usize,
    #[arg(long, default_value_t = 4999)]
    grid_count: usize,
}

#[derive(Clone)]
struct Degrees(Vec<usize>);

fn parse_degrees(s: &str) -> Result<Degrees, String> {
    let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("{v:?}: {e}"));
    let ds = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty range {s}"));
        }
        (a..=b).collect()
    } else {
        s.split(',').map(parse).collect::<Result<Vec<_>, _>>()?
    };
    if ds.contains(&0) {
        return Err("degrees must be at least 1".into());
    }
    Ok(Degrees(ds))
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Domain(String),
    Budget,
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Budget => 4,
        }
    }
}

impl From<GlError> for CliError {
    fn from(e: GlError) -> Self {
        match e {
            GlError::InvalidCurve(_) => CliError::Input(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Domain(m) => f.write_str(m),
            CliError::Budget => f.write_str("time budget exceeded"),
        }
    }
}

/// Shortest text that reads back to the same double; never `-0`.
fn num(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else {
        format!("{v}")
    }
}

fn threads() -> Result<usize, CliError> {
    match std::env::var("GLCURVE_THREADS") {
        Err(_) => Ok(1),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(CliError::Input(format!(
                "GLCURVE_THREADS must be a positive integer, got {v:?}"
            ))),
        },
    }
}

fn uniform(count: usize) -> Result<Vec<f64>, CliError> {
    match count {
        0 => Err(CliError::Input("grid needs at least one point".into())),
        1 => Ok(vec![0.0]),
        _ => Ok((0..count)
            .map(|j| -1.0 + 2.0 * j as f64 / (count - 1) as f64)
            .map(|t: f64| t.clamp(-1.0, 1.0))
            .collect()),
    }
}

/// Flat `ts.len() * d` coordinates.
fn evaluate(
    curve: &glcurve_core::GlCurve,
    method: EvalMethod,
    ts: &[f64],
) -> Result<Vec<f64>, CliError> {
    Ok(match method {
        EvalMethod::Basis(kind) => {
            let prep = prepare(curve, kind)?;
            let threads = threads()?;
            let points = if threads > 1 {
                eval_many_parallel(&prep, ts, threads)?
            } else {
                eval_many(&prep, ts)?
            };
            points.as_flat().to_vec()
        }
        EvalMethod::Integral => eval_integral(curve, ts)?,
    })
}

fn cmd_roots(n: usize, out: &mut impl Write) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Input("N must be at least 1".into()));
    }
    for &tau in legendre_roots(n)?.as_slice() {
        writeln!(out, "{}", num(tau))?;
    }
    Ok(())
}

fn cmd_eval(args: EvalArgs, out: &mut impl Write) -> Result<(), CliError> {
    let curve = read_curve(&args.curve)?;
    let ts = match (args.grid, args.at) {
        (Some(count), _) => uniform(count)?,
        (None, Some(ts)) => ts,
        (None, None) => unreachable!("clap requires one of --grid and --at"),
    };
    let d = curve.dimension();
    let values = evaluate(&curve, args.method, &ts)?;
    let mut text = String::from("t");
    for j in 1..=d {
        text.push_str(&format!(",x{j}"));
    }
    text.push('\n');
    for (t, row) in ts.iter().zip(values.chunks_exact(d)) {
        text.push_str(&num(*t));
        for v in row {
            text.push(',');
            text.push_str(&num(*v));
        }
        text.push('\n');
    }
    match args.out {
        Some(path) => fs::write(&path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_compare(degree: usize, grid_size: usize, out: &mut impl Write) -> Result<(), CliError> {
    if degree == 0 {
        return Err(CliError::Input("degree must be at least 1".into()));
    }
    if grid_size < 2 {
        return Err(CliError::Input("grid size must be at least 2".into()));
    }
    writeln!(out, "n,method,max_abs_error,mean_abs_error")?;
    for method in EvalMethod::ALL {
        let r = error_report(degree, method, grid_size)?;
        writeln!(
            out,
            "{},{},{:e},{:e}",
            r.n, r.method, r.max_abs_error, r.mean_abs_error
        )?;
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs, out: &mut impl Write) -> Result<(), CliError> {
    let budget = match args.budget {
        Some(s) if s.is_finite() && s >= 0.0 => Some(Duration::from_secs_f64(s)),
        Some(s) => {
            return Err(CliError::Input(format!(
                "budget must be non-negative seconds, got {s}"
            )))
        }
        None => None,
    };
    if args.curves == 0 {
        return Err(CliError::Input("need at least one curve per degree".into()));
    }
    let config = BenchConfig {
        degrees: args.degrees.0,
        curves_per_degree: args.curves,
        grid: GridSpec {
            count: args.grid_count,
            step: 2.0 / (args.grid_count + 1) as f64,
            ..GridSpec::default()
        },
        methods: args.methods.unwrap_or_else(|| EvalMethod::ALL.to_vec()),
        seed: args.seed,
        dimension: args.dimension,
        budget,
    };
    let rows = run_bench(&config).map_err(|e| CliError::Input(e.to_string()))?;
    writeln!(out, "n,method,total_seconds")?;
    let mut exceeded = false;
    for row in &rows {
        match row.outcome {
            BenchOutcome::Seconds(s) => writeln!(out, "{},{},{s:.6}", row.n, row.method)?,
            BenchOutcome::BudgetExceeded => {
                exceeded = true;
                writeln!(out, "{},{},max_time_exceeded", row.n, row.method)?
            }
        }
    }
    if exceeded {
        return Err(CliError::Budget);
    }
    Ok(())
}

fn cmd_render(
    curve: PathBuf,
    method: EvalMethod,
    samples: usize,
    path: PathBuf,
) -> Result<(), CliError> {
    let curve = read_curve(&curve)?;
    if curve.dimension() != 2 {
        return Err(CliError::Input(format!(
            "render draws planar curves, this one has dimension {}",
            curve.dimension()
        )));
    }
    if samples < 2 {
        return Err(CliError::Input("need at least two samples".into()));
    }
    let ts = uniform(samples)?;
    let pts: Vec<[f64; 2]> = evaluate(&curve, method, &ts)?
        .chunks_exact(2)
        .map(|p| [p[0], p[1]])
        .collect();
    let control: Vec<[f64; 2]> = curve.control_points().map(|p| [p[0], p[1]]).collect();
    fs::write(&path, render::svg(&control, &pts))
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    match cli.command {
        Command::Roots { n } => cmd_roots(n, &mut out)?,
        Command::Eval(args) => cmd_eval(args, &mut out)?,
        Command::Compare { degree, grid_size } => cmd_compare(degree, grid_size, &mut out)?,
        Command::Bench(args) => {
            // keep the table even when the budget runs out
            let r = cmd_bench(args, &mut out);
            out.flush()?;
            r?
        }
        Command::Render {
            curve,
            method,
            samples,
            out: path,
        } => cmd_render(curve, method, samples, path)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Budget) {
                eprintln!("glcurve: {e}");
            } else {
                eprintln!("glcurve: {e}; affected rows are marked max_time_exceeded");
            }
            ExitCode::from(e.code())
        }
    }
}
