//! `lerw` — Monte Carlo experiments for finite-memory loop-erased walks.
//!
//! Exit codes: 0 success, 1 configuration error, 2 resource refusal,
//! 3 runtime failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use lerw::config::{parse_config, Alpha, CliOverrides, ExperimentKind};
use lerw::error::Error;
use lerw::output::write_outputs;
use lerw::runner::run_experiment;

#[derive(Parser, Debug)]
#[command(
    name = "lerw",
    version,
    about = "Monte Carlo laboratory for finite-memory loop-erased random walks on Z^d",
    after_help = "Defaults: N=1024, alpha=0.4, dim=3, replicas=1000, seed=42, margin=1.0.\n\
                  Data outputs depend only on (config, seed); --workers only changes scheduling."
)]
struct Cli {
    /// Experiment to run (may also come from --config)
    #[arg(value_enum)]
    experiment: Option<ExperimentKind>,

    /// TOML config file; explicit flags override its values
    #[arg(long)]
    config: Option<PathBuf>,

    /// Scaling parameter N
    #[arg(long = "N", allow_hyphen_values = true)]
    n_scale: Option<i128>,

    /// Memory exponent (non-negative real, or `inf` for full erasure)
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,

    /// Lattice dimension d
    #[arg(long, allow_hyphen_values = true)]
    dim: Option<i64>,

    /// Monte Carlo replicas per stage
    #[arg(long, allow_hyphen_values = true)]
    replicas: Option<i128>,

    /// Master seed; replica k uses stream index k within its namespace
    #[arg(long)]
    seed: Option<u64>,

    /// Worker threads (scheduling only; outputs are worker-independent)
    #[arg(long)]
    workers: Option<usize>,

    /// Output directory for CSV tables and summary.json
    #[arg(long)]
    out: Option<PathBuf>,

    /// Comma-separated grid of indices n (survival, zeta)
    #[arg(long = "n-grid", value_delimiter = ',')]
    n_grid: Option<Vec<u64>>,

    /// Comma-separated grid of beta exponents (z-decay)
    #[arg(long = "beta-grid", value_delimiter = ',', allow_hyphen_values = true)]
    beta_grid: Option<Vec<f64>>,

    /// Margin factor: paths extend margin*W beyond the observed range
    #[arg(long = "margin", allow_hyphen_values = true)]
    margin: Option<f64>,

    /// Prior zeta estimate; enables the theorem-regime warning
    #[arg(long = "zeta-hat", allow_hyphen_values = true)]
    zeta_hat: Option<f64>,

    /// Explicit path length in points (overrides per-experiment heuristics)
    #[arg(long = "path-len")]
    path_len: Option<usize>,
}

const EXIT_CONFIG: u8 = 1;
const EXIT_RESOURCE: u8 = 2;
const EXIT_RUNTIME: u8 = 3;

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_CONFIG);
        }
        Err(e) => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };

    // Range-check the numeric flags that clap parses as wider types, so the
    // error names the key instead of overflowing silently.
    let n_scale = match cli.n_scale.map(u64::try_from).transpose() {
        Ok(v) => v,
        Err(_) => return fail(EXIT_CONFIG, "invalid value for `N`: must be a non-negative integer"),
    };
    let replicas = match cli.replicas.map(u64::try_from).transpose() {
        Ok(v) => v,
        Err(_) => {
            return fail(
                EXIT_CONFIG,
                "invalid value for `replicas`: must be a non-negative integer",
            )
        }
    };
    let dim = match cli.dim.map(usize::try_from).transpose() {
        Ok(v) => v,
        Err(_) => return fail(EXIT_CONFIG, "invalid value for `dim`: must be a positive integer"),
    };
    let alpha = match cli.alpha.as_deref().map(str::parse::<Alpha>).transpose() {
        Ok(v) => v,
        Err(e) => return fail(EXIT_CONFIG, e),
    };

    let file_text = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => Some(text),
            Err(e) => return fail(EXIT_CONFIG, format!("cannot read {}: {e}", path.display())),
        },
        None => None,
    };

    let overrides = CliOverrides {
        experiment: cli.experiment,
        n_scale,
        alpha,
        dim,
        replicas,
        master_seed: cli.seed,
        n_grid: cli.n_grid,
        beta_grid: cli.beta_grid,
        margin_factor: cli.margin,
        workers: cli.workers,
        out_dir: cli.out,
        zeta_hat: cli.zeta_hat,
        path_len: cli.path_len,
        max_walk_points: None,
        memory_budget_mb: None,
    };

    let cfg = match parse_config(file_text.as_deref(), &overrides) {
        Ok(cfg) => cfg,
        Err(e) => return fail(EXIT_CONFIG, e),
    };

    let result = match run_experiment(&cfg) {
        Ok(r) => r,
        Err(e @ Error::ResourceLimit(_)) => return fail(EXIT_RESOURCE, e),
        Err(e) => return fail(EXIT_RUNTIME, e),
    };

    let out_dir = cfg
        .out_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from("lerw_out").join(cfg.experiment.name()));
    let written = match write_outputs(&result, &out_dir) {
        Ok(paths) => paths,
        Err(e) => return fail(EXIT_RUNTIME, e),
    };

    println!(
        "{}: {} replicas done in {:.2}s",
        cfg.experiment, cfg.replicas, result.manifest.wall_time_secs
    );
    if let Some(w) = result.manifest.window {
        println!("window W = {w}");
    }
    if result.manifest.censoring.censored > 0 {
        println!(
            "censored replicas: {}/{}",
            result.manifest.censoring.censored, result.manifest.censoring.total
        );
    }
    for warning in &result.manifest.warnings {
        println!("warning: {warning}");
    }
    if !result.manifest.valid {
        println!("result flagged INVALID (censoring above the quality gate)");
    }
    if let Some(results) = result.summary.get("results") {
        for key in ["mean", "zeta_hat", "mismatch_frequency", "pass_all"] {
            if let Some(v) = results.get(key) {
                println!("{key} = {v}");
            }
        }
    }
    for path in &written {
        println!("wrote {}", path.display());
    }
    ExitCode::SUCCESS
}
