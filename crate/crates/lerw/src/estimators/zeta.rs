//! Two-walk non-intersection probabilities and the intersection exponent.
//!
//! The observable: two independent walks `S` and `S'` from the origin, and
//! the event that `S[1..=n]` avoids `S'[0..=n]` (the shared starting point is
//! excluded on the `S` side). Its probability decays like `n^(-zeta)`; the
//! exponent comes from a log-log fit over a grid of `n`.

use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::estimators::{fit_power_law, map_experiment_walks};
use crate::rng::RngStream;
use crate::stats::bootstrap::bootstrap_ci_with;
use crate::walk::{generate_walk, LatticePoint};

#[derive(Clone, Debug, Serialize)]
pub struct ZetaEstimate {
    /// Fitted decay exponent (NaN when the fit is degenerate).
    pub zeta_hat: f64,
    /// Standard error of the exponent from the fit residuals.
    pub stderr: f64,
    pub n_range: (u64, u64),
    pub replicas: u64,
    /// `(n, p_hat(n))` per grid point; non-increasing in `n` by construction
    /// (the events are nested on common replicas).
    pub survival_points: Vec<(u64, f64)>,
    /// True when fewer than 3 grid points had positive probability.
    pub degenerate: bool,
    /// Per-replica intersection times, capped at `max(n_grid) + 1`
    /// ("never intersected within the grid"). Replica order.
    #[serde(skip)]
    pub times: Vec<usize>,
}

/// First index `m` such that `S[1..=m]` meets `S'[0..=m]`, or `max_n + 1`
/// when the walks stay disjoint over the whole grid horizon.
fn intersection_time(s: &[LatticePoint], s_prime: &[LatticePoint], max_n: usize) -> usize {
    let mut s_seen: FxHashSet<&LatticePoint> = FxHashSet::default();
    let mut sp_seen: FxHashSet<&LatticePoint> = FxHashSet::default();
    sp_seen.insert(&s_prime[0]);
    for m in 1..=max_n {
        s_seen.insert(&s[m]);
        sp_seen.insert(&s_prime[m]);
        if sp_seen.contains(&s[m]) || s_seen.contains(&s_prime[m]) {
            return m;
        }
    }
    max_n + 1
}

/// Estimate the non-intersection probabilities over `n_grid` and fit the
/// decay exponent.
pub fn estimate_zeta(cfg: &ExperimentConfig, n_grid: &[u64]) -> Result<ZetaEstimate> {
    if n_grid.len() < 3 {
        return Err(Error::InsufficientData(
            "zeta estimation needs an n_grid with >= 3 points".to_string(),
        ));
    }
    if n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("n_grid", "must be strictly increasing"));
    }
    if n_grid[0] == 0 {
        return Err(Error::invalid("n_grid", "grid points must be >= 1"));
    }
    let max_n = *n_grid.last().unwrap() as usize;
    cfg.ensure_path_budget(2 * (max_n + 1))?;

    let times: Vec<usize> = map_experiment_walks(cfg, |_, rng| {
        let s = generate_walk(rng, max_n, cfg.dim);
        let s_prime = generate_walk(rng, max_n, cfg.dim);
        intersection_time(s.points(), s_prime.points(), max_n)
    });

    let survival_points = survival_from_times(&times, n_grid);
    let positive: Vec<(f64, f64)> = survival_points
        .iter()
        .filter(|&&(_, p)| p > 0.0)
        .map(|&(n, p)| (n as f64, p))
        .collect();

    let n_range = (n_grid[0], *n_grid.last().unwrap());
    let (zeta_hat, stderr, degenerate) = if positive.len() < 3 {
        (f64::NAN, f64::NAN, true)
    } else {
        let fit = fit_power_law(&positive, (n_range.0 as f64, n_range.1 as f64))?;
        (fit.exponent, fit.stderr, false)
    };

    Ok(ZetaEstimate {
        zeta_hat,
        stderr,
        n_range,
        replicas: cfg.replicas,
        survival_points,
        degenerate,
        times,
    })
}

fn survival_from_times(times: &[usize], n_grid: &[u64]) -> Vec<(u64, f64)> {
    let total = times.len() as f64;
    n_grid
        .iter()
        .map(|&n| {
            let surviving = times.iter().filter(|&&t| t > n as usize).count();
            (n, surviving as f64 / total)
        })
        .collect()
}

/// Percentile bootstrap interval for the fitted exponent: resample the
/// per-replica intersection times, recompute the survival grid, refit.
pub fn zeta_bootstrap_ci(
    times: &[usize],
    n_grid: &[u64],
    b: usize,
    level: f64,
    rng: &mut RngStream,
) -> Result<(f64, f64)> {
    let samples: Vec<f64> = times.iter().map(|&t| t as f64).collect();
    let grid = n_grid.to_vec();
    let range = (grid[0] as f64, *grid.last().unwrap() as f64);
    bootstrap_ci_with(
        &samples,
        |resampled| {
            let total = resampled.len() as f64;
            let points: Vec<(f64, f64)> = grid
                .iter()
                .map(|&n| {
                    let surviving = resampled.iter().filter(|&&t| t > n as f64).count();
                    (n as f64, surviving as f64 / total)
                })
                .filter(|&(_, p)| p > 0.0)
                .collect();
            if points.len() < 3 {
                return f64::NAN;
            }
            match fit_power_law(&points, range) {
                Ok(fit) => fit.exponent,
                Err(_) => f64::NAN,
            }
        },
        b,
        level,
        rng,
    )
}
