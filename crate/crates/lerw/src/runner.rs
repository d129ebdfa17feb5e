//! Experiment orchestration: dispatch, stream-namespace bookkeeping, the run
//! manifest, and machine-readable result assembly.
//!
//! `(config, master_seed)` determines every data output byte-for-byte; the
//! worker count only changes scheduling. Multi-stage experiments run their
//! survival-curve stage automatically on a disjoint stream namespace and
//! record both stages.

use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::erasure::{erase_full, erase_windowed};
use crate::error::{Error, Result};
use crate::estimators::{
    estimate_scale_decay, estimate_survival_on_grid, estimate_z_decay, estimate_zeta,
    fit_scale_decay, linear_fit, rho_ratio_experiment, sigma_scaling_experiment,
    zeta_bootstrap_ci, Censoring, SurvivalCurve,
};
use crate::output::{coord_names, fmt_f64, Table};
use crate::rng::derive_stream;
use crate::stats::{clt_experiment, compare_lew_experiment, tau_clt_experiment};
use crate::walk::generate_walk;

/// Bootstrap replications used for the zeta confidence interval.
pub const ZETA_BOOTSTRAP_B: usize = 1000;
pub const ZETA_BOOTSTRAP_LEVEL: f64 = 0.95;

/// The `p_hat` band over which the loop-free-gap decay is fit log-linearly.
pub const Z_DECAY_FIT_BAND: (f64, f64) = (1e-3, 0.5);

#[derive(Clone, Debug, Serialize)]
pub struct StreamNamespaces {
    /// Curve-estimation replicas `[start, end)`, when a curve stage ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<(u64, u64)>,
    /// Experiment replicas `[start, end)`.
    pub experiment: (u64, u64),
    /// Bootstrap stream, when a bootstrap ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bootstrap: Option<u64>,
}

/// Everything needed to audit or re-run a campaign bit-identically, minus
/// wall time.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub artifact_version: String,
    pub experiment: String,
    pub config: ExperimentConfig,
    /// Effective window `floor(N^alpha)`; `None` means full erasure.
    pub window: Option<usize>,
    /// Points per generated path in the experiment stage.
    pub path_points: usize,
    pub stream_namespaces: StreamNamespaces,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve_grid: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_grid: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_grid: Option<Vec<f64>>,
    pub censoring: Censoring,
    pub warnings: Vec<String>,
    /// False when the censoring quality gate failed.
    pub valid: bool,
    pub wall_time_secs: f64,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub manifest: RunManifest,
    pub tables: Vec<Table>,
    /// `{ "manifest": ..., "results": ... }`
    pub summary: serde_json::Value,
}

struct Outcome {
    tables: Vec<Table>,
    results: serde_json::Value,
    censoring: Censoring,
    window: Option<usize>,
    path_points: usize,
    curve_grid: Option<Vec<u64>>,
    n_grid: Option<Vec<u64>>,
    beta_grid: Option<Vec<f64>>,
    used_curve_namespace: bool,
    used_bootstrap: bool,
    warnings: Vec<String>,
}

impl Outcome {
    fn new(results: serde_json::Value, censoring: Censoring) -> Self {
        Outcome {
            tables: Vec::new(),
            results,
            censoring,
            window: None,
            path_points: 0,
            curve_grid: None,
            n_grid: None,
            beta_grid: None,
            used_curve_namespace: false,
            used_bootstrap: false,
            warnings: Vec::new(),
        }
    }
}

/// Run one experiment end to end and assemble tables plus the JSON summary.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunResult> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Runtime(format!("failed to build worker pool: {e}")))?;
    let outcome = pool.install(|| dispatch(cfg))?;

    let mut warnings = outcome.warnings.clone();
    warnings.extend(regime_warnings(cfg));

    let manifest = RunManifest {
        artifact_version: env!("CARGO_PKG_VERSION").to_string(),
        experiment: cfg.experiment.name().to_string(),
        config: cfg.clone(),
        window: outcome.window,
        path_points: outcome.path_points,
        stream_namespaces: StreamNamespaces {
            curve: outcome
                .used_curve_namespace
                .then(|| (0, cfg.replicas)),
            experiment: (cfg.replicas, 2 * cfg.replicas),
            bootstrap: outcome.used_bootstrap.then(|| cfg.bootstrap_stream_index()),
        },
        curve_grid: outcome.curve_grid,
        n_grid: outcome.n_grid,
        beta_grid: outcome.beta_grid,
        censoring: outcome.censoring,
        warnings,
        valid: outcome.censoring.is_valid(),
        wall_time_secs: start.elapsed().as_secs_f64(),
    };
    let summary = json!({
        "manifest": manifest,
        "results": outcome.results,
    });
    Ok(RunResult {
        manifest,
        tables: outcome.tables,
        summary,
    })
}

/// The Gaussian-regime warning: fires iff `alpha >= 1 / (1 + 2 zeta_hat)`
/// when a zeta estimate is configured, plus the `alpha <= 2` caveat for the
/// windowed-vs-full comparison.
fn regime_warnings(cfg: &ExperimentConfig) -> Vec<String> {
    let mut warnings = Vec::new();
    let alpha_regime_experiments = matches!(
        cfg.experiment,
        ExperimentKind::Survival
            | ExperimentKind::RhoRatio
            | ExperimentKind::SigmaScaling
            | ExperimentKind::Clt
            | ExperimentKind::TauClt
    );
    if alpha_regime_experiments {
        if let Some(zeta) = cfg.zeta_hat {
            let bound = 1.0 / (1.0 + 2.0 * zeta);
            if cfg.alpha.value() >= bound {
                warnings.push(format!(
                    "alpha = {} >= 1/(1+2*zeta_hat) = {bound:.6}: outside the regime where the \
                     Gaussian limit statements apply",
                    cfg.alpha
                ));
            }
        }
    }
    if cfg.experiment == ExperimentKind::CompareLew && cfg.alpha.value() <= 2.0 {
        warnings.push(format!(
            "alpha = {} <= 2: windowed and full erasure need not share a limit; expect mismatches",
            cfg.alpha
        ));
    }
    warnings
}

fn dispatch(cfg: &ExperimentConfig) -> Result<Outcome> {
    match cfg.experiment {
        ExperimentKind::Survival => run_survival(cfg),
        ExperimentKind::RhoRatio => run_rho_ratio(cfg),
        ExperimentKind::SigmaScaling => run_sigma_scaling(cfg),
        ExperimentKind::Clt => run_clt(cfg),
        ExperimentKind::TauClt => run_tau_clt(cfg),
        ExperimentKind::CompareLew => run_compare_lew(cfg),
        ExperimentKind::Zeta => run_zeta(cfg),
        ExperimentKind::ZDecay => run_z_decay(cfg),
        ExperimentKind::Walk => run_walk_dump(cfg),
        ExperimentKind::Erase => run_erase_dump(cfg),
    }
}

fn survival_table(curve: &SurvivalCurve) -> Table {
    let mut t = Table::new("survival", &["n", "a_hat", "stderr", "replicas"]);
    for e in &curve.entries {
        t.push_row(vec![
            e.n.to_string(),
            fmt_f64(e.a_hat),
            fmt_f64(e.stderr),
            e.replicas.to_string(),
        ]);
    }
    t
}

fn curve_fit_json(curve: &SurvivalCurve) -> serde_json::Value {
    match curve.fit_exponent() {
        Ok(fit) => json!({
            "exponent": fit.exponent,
            "amplitude": fit.amplitude,
            "stderr": fit.stderr,
            "r_squared": fit.r_squared,
        }),
        Err(_) => serde_json::Value::Null,
    }
}

/// Geometric grid from `N` to `hi` (both included), about 8 points per
/// octave, used to cover the realized range of `sigma(N)`.
fn sigma_curve_grid(n_scale: u64, hi: usize) -> Vec<u64> {
    let lo = n_scale.max(1);
    let hi = (hi as u64).max(lo + 1);
    let octaves = ((hi as f64 / lo as f64).log2()).max(0.1);
    let count = (octaves * 8.0).ceil() as usize + 1;
    let ratio = (hi as f64 / lo as f64).powf(1.0 / (count - 1) as f64);
    let mut grid: Vec<u64> = (0..count)
        .map(|i| (lo as f64 * ratio.powi(i as i32)).round() as u64)
        .collect();
    grid[0] = lo;
    *grid.last_mut().unwrap() = hi;
    grid.dedup();
    grid
}

fn run_survival(cfg: &ExperimentConfig) -> Result<Outcome> {
    let grid = cfg.survival_grid();
    let curve = estimate_survival_on_grid(cfg, &grid)?;
    let max_n = *grid.last().unwrap() as usize;
    let mut outcome = Outcome::new(
        json!({
            "window": curve.window,
            "a_at_n": curve.at(cfg.n_scale as usize),
            "entries": curve.entries,
            "fit": curve_fit_json(&curve),
        }),
        Censoring::none(cfg.replicas),
    );
    outcome.window = Some(curve.window);
    outcome.path_points = max_n + 1 + cfg.margin_points(curve.window);
    outcome.n_grid = Some(grid);
    outcome.used_curve_namespace = true;
    outcome.tables.push(survival_table(&curve));
    Ok(outcome)
}

fn run_rho_ratio(cfg: &ExperimentConfig) -> Result<Outcome> {
    let grid = cfg.survival_grid();
    if !grid.contains(&cfg.n_scale) {
        return Err(Error::invalid(
            "n_grid",
            "the rho-ratio normalization needs a_hat exactly at n = N; include N in the grid",
        ));
    }
    let curve = estimate_survival_on_grid(cfg, &grid)?;
    let out = rho_ratio_experiment(cfg, &curve)?;

    let mut table = Table::new("rho_ratio", &["replica", "rho", "sample"]);
    for i in 0..out.ratios.samples.len() {
        table.push_row(vec![
            out.ratios.stream_indices[i].to_string(),
            out.rho_values[i].to_string(),
            fmt_f64(out.ratios.samples[i]),
        ]);
    }

    let mut outcome = Outcome::new(
        json!({
            "a_at_n": out.a_at_n,
            "mean": out.ratios.mean,
            "std": out.ratios.std,
            "count": out.ratios.samples.len(),
        }),
        Censoring::none(cfg.replicas),
    );
    if out.ratios.std.is_none() {
        outcome
            .warnings
            .push("single replica: sample std undefined".to_string());
    }
    outcome.window = Some(curve.window);
    outcome.path_points = cfg.n_scale as usize + 1 + cfg.margin_points(curve.window);
    outcome.n_grid = Some(grid);
    outcome.used_curve_namespace = true;
    outcome.tables.push(survival_table(&curve));
    outcome.tables.push(table);
    Ok(outcome)
}

fn sigma_stage_curve(cfg: &ExperimentConfig) -> Result<(SurvivalCurve, usize, Vec<u64>)> {
    let window = cfg.raw_window()?.ok_or_else(|| {
        Error::invalid("alpha", "this experiment requires a finite window")
    })?;
    let path_points = cfg.sigma_path_points(window);
    cfg.ensure_path_budget(path_points)?;
    let grid = sigma_curve_grid(cfg.n_scale, path_points - 1);
    let curve = estimate_survival_on_grid(cfg, &grid)?;
    Ok((curve, path_points, grid))
}

fn run_sigma_scaling(cfg: &ExperimentConfig) -> Result<Outcome> {
    let (curve, path_points, grid) = sigma_stage_curve(cfg)?;
    let out = sigma_scaling_experiment(cfg, &curve)?;

    let mut table = Table::new("sigma_scaling", &["replica", "sigma_n", "a_hat", "sample"]);
    for i in 0..out.ratios.samples.len() {
        table.push_row(vec![
            out.ratios.stream_indices[i].to_string(),
            out.sigma_values[i].to_string(),
            fmt_f64(out.a_values[i]),
            fmt_f64(out.ratios.samples[i]),
        ]);
    }

    let mut outcome = Outcome::new(
        json!({
            "mean": out.ratios.mean,
            "std": out.ratios.std,
            "count": out.ratios.samples.len(),
            "censored_fraction": out.censoring.fraction(),
        }),
        out.censoring,
    );
    outcome.window = Some(curve.window);
    outcome.path_points = path_points;
    outcome.curve_grid = Some(grid);
    outcome.used_curve_namespace = true;
    outcome.tables.push(survival_table(&curve));
    outcome.tables.push(table);
    Ok(outcome)
}

fn run_clt(cfg: &ExperimentConfig) -> Result<Outcome> {
    let (curve, path_points, grid) = sigma_stage_curve(cfg)?;
    let out = clt_experiment(cfg, &curve)?;

    let mut header = vec!["replica".to_string(), "sigma_n".to_string(), "f_n".to_string()];
    header.extend(coord_names(cfg.dim));
    let mut table = Table {
        name: "clt".to_string(),
        header,
        rows: Vec::new(),
    };
    for row in &out.rows {
        let mut cells = vec![
            row.stream_index.to_string(),
            row.sigma_n.to_string(),
            row.f_n.to_string(),
        ];
        cells.extend(row.endpoint.coords().iter().map(|c| c.to_string()));
        table.push_row(cells);
    }

    let mut outcome = Outcome::new(
        json!({
            "diagnostics": out.diagnostics,
            "pass_all": out.diagnostics.pass_all(),
            "count": out.rows.len(),
            "censored_fraction": out.censoring.fraction(),
        }),
        out.censoring,
    );
    outcome.window = Some(curve.window);
    outcome.path_points = path_points;
    outcome.curve_grid = Some(grid);
    outcome.used_curve_namespace = true;
    outcome.tables.push(survival_table(&curve));
    outcome.tables.push(table);
    Ok(outcome)
}

/// Halving ladder of scales below (and including) `n`, smallest first.
fn scale_ladder(n: u64) -> Vec<u64> {
    let mut scales: Vec<u64> = (0..=4).map(|k| n >> k).filter(|&s| s >= 64).collect();
    scales.reverse();
    scales
}

fn run_tau_clt(cfg: &ExperimentConfig) -> Result<Outcome> {
    // The decay exponent q lives in the scale direction (window co-scaling
    // with N), not along the fixed-window survival curve, which flattens
    // beyond the window; fit it on a ladder of smaller scales.
    let scales = scale_ladder(cfg.n_scale);
    let ladder = estimate_scale_decay(cfg, &scales)?;
    let fit = fit_scale_decay(&ladder)?;
    let out = tau_clt_experiment(cfg, &fit)?;
    let window = cfg
        .raw_window()?
        .ok_or_else(|| Error::invalid("alpha", "tau-clt requires a finite window"))?;
    let path_points = cfg.sigma_path_points(window);

    let mut ladder_table = Table::new(
        "scale_decay",
        &["N", "window", "a_hat", "stderr", "replicas"],
    );
    for p in &ladder {
        ladder_table.push_row(vec![
            p.n_scale.to_string(),
            p.window.to_string(),
            fmt_f64(p.a_hat),
            fmt_f64(p.stderr),
            p.replicas.to_string(),
        ]);
    }

    let mut header = vec!["replica".to_string(), "sigma_n".to_string()];
    header.extend(coord_names(cfg.dim));
    let mut table = Table {
        name: "tau_clt".to_string(),
        header,
        rows: Vec::new(),
    };
    for row in &out.rows {
        let mut cells = vec![row.stream_index.to_string(), row.sigma_n.to_string()];
        cells.extend(row.endpoint.coords().iter().map(|c| c.to_string()));
        table.push_row(cells);
    }

    let mut outcome = Outcome::new(
        json!({
            "q": out.q,
            "tau": out.tau,
            "fit": {
                "exponent": fit.exponent,
                "amplitude": fit.amplitude,
                "stderr": fit.stderr,
                "r_squared": fit.r_squared,
            },
            "scale_decay": ladder,
            "diagnostics": out.diagnostics,
            "pass_all": out.diagnostics.pass_all(),
            "count": out.rows.len(),
            "censored_fraction": out.censoring.fraction(),
        }),
        out.censoring,
    );
    outcome.window = Some(window);
    outcome.path_points = path_points;
    outcome.curve_grid = Some(scales);
    outcome.used_curve_namespace = true;
    outcome.tables.push(ladder_table);
    outcome.tables.push(table);
    Ok(outcome)
}

fn run_compare_lew(cfg: &ExperimentConfig) -> Result<Outcome> {
    let raw_window = cfg.raw_window()?;
    let out = compare_lew_experiment(cfg)?;

    let mut header = vec![
        "replica".to_string(),
        "sigma_windowed".to_string(),
        "sigma_full".to_string(),
        "mismatch".to_string(),
    ];
    header.extend(coord_names(cfg.dim).iter().map(|c| format!("windowed_{c}")));
    header.extend(coord_names(cfg.dim).iter().map(|c| format!("full_{c}")));
    let mut table = Table {
        name: "compare_lew".to_string(),
        header,
        rows: Vec::new(),
    };
    for row in &out.rows {
        let mut cells = vec![
            row.stream_index.to_string(),
            row.sigma_windowed.to_string(),
            row.sigma_full.to_string(),
            u8::from(row.mismatch).to_string(),
        ];
        cells.extend(row.windowed_endpoint.coords().iter().map(|c| c.to_string()));
        cells.extend(row.full_endpoint.coords().iter().map(|c| c.to_string()));
        table.push_row(cells);
    }

    let mut outcome = Outcome::new(
        json!({
            "mismatch_frequency": out.report.mismatch_frequency,
            "c_n": out.report.c_n,
            "d_n": out.report.d_n,
            "moment_ratio": out.report.moment_ratio,
            "count": out.rows.len(),
            "censored_fraction": out.censoring.fraction(),
        }),
        out.censoring,
    );
    outcome.window = raw_window;
    outcome.path_points = cfg.compare_path_points(raw_window);
    outcome.tables.push(table);
    Ok(outcome)
}

fn run_zeta(cfg: &ExperimentConfig) -> Result<Outcome> {
    let grid = cfg.zeta_grid();
    let est = estimate_zeta(cfg, &grid)?;
    let ci = if est.degenerate {
        None
    } else {
        let mut rng = derive_stream(cfg.master_seed, cfg.bootstrap_stream_index());
        Some(zeta_bootstrap_ci(
            &est.times,
            &grid,
            ZETA_BOOTSTRAP_B,
            ZETA_BOOTSTRAP_LEVEL,
            &mut rng,
        )?)
    };

    let mut table = Table::new("zeta", &["n", "p_hat", "stderr", "replicas"]);
    for &(n, p) in &est.survival_points {
        let stderr = (p * (1.0 - p) / cfg.replicas as f64).sqrt();
        table.push_row(vec![
            n.to_string(),
            fmt_f64(p),
            fmt_f64(stderr),
            cfg.replicas.to_string(),
        ]);
    }

    let mut outcome = Outcome::new(
        json!({
            "zeta_hat": est.zeta_hat,
            "stderr": est.stderr,
            "degenerate": est.degenerate,
            "ci_level": ZETA_BOOTSTRAP_LEVEL,
            "ci": ci.map(|(lo, hi)| vec![lo, hi]),
            "n_range": est.n_range,
            "survival_points": est.survival_points,
        }),
        Censoring::none(cfg.replicas),
    );
    if est.degenerate {
        outcome.warnings.push(
            "zeta fit degenerate: fewer than 3 grid points with positive survival".to_string(),
        );
    }
    outcome.path_points = *grid.last().unwrap() as usize + 1;
    outcome.n_grid = Some(grid);
    outcome.used_bootstrap = !est.degenerate;
    outcome.tables.push(table);
    Ok(outcome)
}

fn run_z_decay(cfg: &ExperimentConfig) -> Result<Outcome> {
    let grid = cfg.z_decay_grid();
    let points = estimate_z_decay(cfg, &grid)?;

    let mut table = Table::new(
        "z_decay",
        &["beta", "x", "interval_len", "p_hat", "stderr", "replicas"],
    );
    for p in &points {
        table.push_row(vec![
            fmt_f64(p.beta),
            fmt_f64(p.x),
            p.interval_len.to_string(),
            fmt_f64(p.p_hat),
            fmt_f64(p.stderr),
            p.replicas.to_string(),
        ]);
    }

    let band_points: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.p_hat >= Z_DECAY_FIT_BAND.0 && p.p_hat <= Z_DECAY_FIT_BAND.1)
        .map(|p| (p.x, p.p_hat.ln()))
        .collect();
    let band_fit = if band_points.len() >= 3 {
        linear_fit(&band_points).ok()
    } else {
        None
    };

    let window = cfg.raw_window()?.unwrap_or(0);
    let anchor = points
        .iter()
        .map(|p| p.interval_len)
        .max()
        .unwrap_or(0);
    let mut outcome = Outcome::new(
        json!({
            "points": points,
            "band": [Z_DECAY_FIT_BAND.0, Z_DECAY_FIT_BAND.1],
            "band_fit": band_fit,
        }),
        Censoring::none(cfg.replicas),
    );
    outcome.window = Some(window);
    outcome.path_points = anchor + 1 + cfg.margin_points(window);
    outcome.beta_grid = Some(grid);
    outcome.tables.push(table);
    Ok(outcome)
}

fn run_walk_dump(cfg: &ExperimentConfig) -> Result<Outcome> {
    let steps = cfg.path_len.map(|l| l - 1).unwrap_or(cfg.n_scale as usize);
    cfg.ensure_path_budget(steps + 1)?;
    let mut rng = derive_stream(cfg.master_seed, cfg.experiment_stream_index(0));
    let path = generate_walk(&mut rng, steps, cfg.dim);

    let mut header = vec!["step".to_string()];
    header.extend(coord_names(cfg.dim));
    let mut table = Table {
        name: "walk".to_string(),
        header,
        rows: Vec::new(),
    };
    for (i, p) in path.points().iter().enumerate() {
        let mut cells = vec![i.to_string()];
        cells.extend(p.coords().iter().map(|c| c.to_string()));
        table.push_row(cells);
    }

    let mut outcome = Outcome::new(
        json!({
            "num_steps": steps,
            "endpoint": path.point(steps).coords(),
        }),
        Censoring::none(1),
    );
    outcome.path_points = steps + 1;
    outcome.tables.push(table);
    Ok(outcome)
}

fn run_erase_dump(cfg: &ExperimentConfig) -> Result<Outcome> {
    let raw_window = cfg.raw_window()?;
    let n = cfg.n_scale as usize;
    let path_points = cfg
        .path_len
        .unwrap_or(n + 1 + cfg.margin_points(raw_window.unwrap_or(0)));
    cfg.ensure_path_budget(path_points)?;
    let mut rng = derive_stream(cfg.master_seed, cfg.experiment_stream_index(0));
    let path = generate_walk(&mut rng, path_points - 1, cfg.dim);
    let trace = match raw_window {
        Some(w) => erase_windowed(path.points(), w.min(path.len())),
        None => erase_full(path.points()),
    };

    let mut header = vec!["n".to_string()];
    header.extend(coord_names(cfg.dim));
    header.push("y_flag".to_string());
    header.push("rho".to_string());
    let mut path_table = Table {
        name: "path".to_string(),
        header,
        rows: Vec::new(),
    };
    for (i, p) in path.points().iter().enumerate() {
        let mut cells = vec![i.to_string()];
        cells.extend(p.coords().iter().map(|c| c.to_string()));
        cells.push(u8::from(trace.y_flags[i]).to_string());
        cells.push(trace.rho[i].to_string());
        path_table.push_row(cells);
    }

    let mut header = vec!["i".to_string(), "sigma".to_string()];
    header.extend(coord_names(cfg.dim));
    let mut erased_table = Table {
        name: "erased".to_string(),
        header,
        rows: Vec::new(),
    };
    for (i, &s) in trace.sigma.iter().enumerate() {
        let mut cells = vec![i.to_string(), s.to_string()];
        cells.extend(trace.erased_path[i].coords().iter().map(|c| c.to_string()));
        erased_table.push_row(cells);
    }

    let window = raw_window.unwrap_or(path.len());
    let mut outcome = Outcome::new(
        json!({
            "window": window,
            "num_jumps": trace.num_jumps(),
            "rho_at_n": trace.rho.get(n),
        }),
        Censoring::none(1),
    );
    outcome.window = raw_window;
    outcome.path_points = path_points;
    outcome.tables.push(path_table);
    outcome.tables.push(erased_table);
    Ok(outcome)
}
