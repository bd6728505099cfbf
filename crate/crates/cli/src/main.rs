use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use log::warn;

use isolat::bench::{self, BenchConfig};
use isolat::homotopy::{load_zeros, solve_with_summary, zeros_from_points, TrackerConfig};
use isolat::isolate::{real_root_isolate, IsolateConfig, IsolationReport};
use isolat::poly::{parse_system, PolySystem};
use isolat::report::{self, PhaseTimes};

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_UNVERIFIED: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "isolat",
    version,
    about = "Certified isolation of the real roots of polynomial systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Isolate the real roots of one system.
    Solve(RunConfig),
    /// Run every `.txt` system in a directory and tabulate the results.
    Bench {
        dir: PathBuf,
        #[arg(long, value_enum, default_value_t = BenchFormat::Csv)]
        format: BenchFormat,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10, value_parser = positive)]
        tau: f64,
    },
}

#[derive(clap::Args, Debug)]
struct RunConfig {
    input_path: PathBuf,
    /// Target radius of the final boxes.
    #[arg(long, default_value_t = 1e-10, value_parser = positive)]
    tau: f64,
    /// Approximate zeros to use instead of running the tracker, one per line
    /// as `re im re im ...`.
    #[arg(long)]
    roots_file: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "format", value_enum, default_value_t = OutputFormat::Text)]
    output_format: OutputFormat,
    #[arg(long)]
    expected_real: Option<usize>,
    #[arg(long)]
    expected_total: Option<usize>,
    /// Report wall-clock time per phase.
    #[arg(long)]
    phase_timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BenchFormat {
    Csv,
    Json,
    Table,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(_) => Err("must be a positive number".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn read_system(path: &Path) -> Result<PolySystem> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_system(&text).with_context(|| format!("parsing {}", path.display()))
}

fn track(sys: &PolySystem, seed: u64) -> Result<Vec<isolat::homotopy::ApproxZero>> {
    let summary = solve_with_summary(sys, &TrackerConfig::with_seed(seed))?;
    if summary.diverged + summary.unconverged + summary.stalled > 0 {
        log::info!(
            "{} paths: {} diverged, {} unconverged, {} stalled",
            summary.paths,
            summary.diverged,
            summary.unconverged,
            summary.stalled
        );
    }
    Ok(summary.zeros)
}

fn run(cfg: &RunConfig) -> Result<(u8, String)> {
    let sys = read_system(&cfg.input_path)?;
    let tracker = TrackerConfig::default();

    let t = Instant::now();
    let zeros = match &cfg.roots_file {
        Some(path) => {
            let points = load_zeros(path, sys.dim()).with_context(|| format!("reading {}", path.display()))?;
            zeros_from_points(&sys, points, tracker.residual_tolerance)
        }
        None => {
            let mut zeros = track(&sys, cfg.seed)?;
            if cfg.expected_total.is_some_and(|n| zeros.len() < n) {
                let retry = cfg.seed.wrapping_add(1);
                warn!("tracker found {} zeros; retrying with seed {retry}", zeros.len());
                zeros = track(&sys, retry)?;
            }
            zeros
        }
    };
    let homotopy = t.elapsed();

    let t = Instant::now();
    let report = real_root_isolate(&sys, &zeros, cfg.tau, &IsolateConfig::default());
    let times = PhaseTimes {
        homotopy,
        isolation: t.elapsed(),
    };
    let times = cfg.phase_timing.then_some(&times);
    let rendered = match cfg.output_format {
        OutputFormat::Text => report::to_text(&report, times),
        OutputFormat::Json => report::to_json(&report, times),
    };
    Ok((exit_code(cfg, zeros.len(), &report), rendered))
}

fn exit_code(cfg: &RunConfig, total: usize, report: &IsolationReport) -> u8 {
    let mut mismatch = false;
    if let Some(n) = cfg.expected_total.filter(|&n| n != total) {
        warn!("expected {n} zeros in total, found {total}");
        mismatch = true;
    }
    if let Some(n) = cfg.expected_real.filter(|&n| n != report.nreal()) {
        warn!("expected {n} real roots, found {}", report.nreal());
        mismatch = true;
    }
    if mismatch {
        EXIT_MISMATCH
    } else if !report.unverified.is_empty() {
        EXIT_UNVERIFIED
    } else {
        EXIT_OK
    }
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("ISOLAT_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().with_context(|| format!("ISOLAT_THREADS={v}"))?;
    if n == 0 {
        bail!("ISOLAT_THREADS must be at least 1");
    }
    isolat::set_worker_threads(n).context("configuring worker threads")
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Solve(cfg) => run(cfg).map(|(code, out)| {
            print!("{out}");
            code
        }),
        Command::Bench { dir, format, seed, tau } => {
            let cfg = BenchConfig {
                tracker: TrackerConfig::with_seed(*seed),
                tau: *tau,
                ..BenchConfig::default()
            };
            let rows = bench::run_suite(dir, &cfg).with_context(|| format!("reading {}", dir.display()))?;
            match format {
                BenchFormat::Csv => print!("{}", bench::to_csv(&rows)),
                BenchFormat::Json => print!("{}", bench::to_json(&rows)),
                BenchFormat::Table => print!("{}", bench::to_table(&rows)),
            }
            Ok(if rows.iter().any(|r| r.error.is_some()) {
                EXIT_ERROR
            } else {
                EXIT_OK
            })
        }
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
