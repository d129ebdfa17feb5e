//! Decay of the no-loop-free-point indicator `Z(k - N^beta, k)`.
//!
//! For `beta > alpha` the probability that an interval of `N^beta` indices
//! contains no loop-free point decays exponentially in `N^(beta - alpha)`;
//! this estimator measures the curve over a grid of `beta` values on a common
//! anchor `k = ceil(N^beta_max)`.

use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::erasure::{loop_free_mask, window_length, z_indicator};
use crate::error::{Error, Result};
use crate::estimators::map_experiment_walks;
use crate::walk::generate_walk;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZDecayPoint {
    pub beta: f64,
    /// The decay abscissa `N^(beta - alpha)`.
    pub x: f64,
    /// Interval length `floor(N^beta)`.
    pub interval_len: usize,
    pub p_hat: f64,
    pub stderr: f64,
    pub replicas: u64,
}

/// Monte Carlo estimate of `E[Z(k - floor(N^beta), k)]` for every `beta` in
/// the grid; each `beta` must exceed `alpha`.
pub fn estimate_z_decay(cfg: &ExperimentConfig, beta_grid: &[f64]) -> Result<Vec<ZDecayPoint>> {
    if beta_grid.is_empty() {
        return Err(Error::invalid("beta_grid", "must be nonempty"));
    }
    let alpha = cfg.alpha.value();
    if alpha.is_infinite() {
        return Err(Error::invalid("alpha", "z-decay requires a finite window"));
    }
    for &beta in beta_grid {
        if !(beta > alpha) {
            return Err(Error::invalid(
                "beta_grid",
                format!("every beta must exceed alpha = {alpha}, got {beta}"),
            ));
        }
    }
    if cfg.margin_factor < 1.0 {
        return Err(Error::invalid(
            "margin_factor",
            "exact loop-free masks on [0, k] need margin_factor >= 1",
        ));
    }
    let window = window_length(cfg.n_scale, alpha, usize::MAX)?;
    // spans floor(N^beta), all anchored at k >= N^beta_max
    let spans: Vec<usize> = beta_grid
        .iter()
        .map(|&beta| window_length(cfg.n_scale, beta, usize::MAX))
        .collect::<Result<_>>()?;
    let beta_max = beta_grid.iter().cloned().fold(f64::MIN, f64::max);
    let anchor = (cfg.n_scale as f64).powf(beta_max).ceil() as usize;
    let path_points = anchor + 1 + cfg.margin_points(window);
    cfg.ensure_path_budget(path_points)?;

    let hits: Vec<Vec<bool>> = map_experiment_walks(cfg, |_, rng| {
        let path = generate_walk(rng, path_points - 1, cfg.dim);
        let mask = loop_free_mask(path.points(), window);
        spans
            .iter()
            .map(|&len| z_indicator(&mask, anchor - len, anchor).expect("anchor within mask"))
            .collect()
    });

    Ok(beta_grid
        .iter()
        .enumerate()
        .map(|(i, &beta)| {
            let count = hits.iter().filter(|row| row[i]).count();
            let p_hat = count as f64 / cfg.replicas as f64;
            let stderr = (p_hat * (1.0 - p_hat) / cfg.replicas as f64).sqrt();
            ZDecayPoint {
                beta,
                x: (cfg.n_scale as f64).powf(beta - alpha),
                interval_len: spans[i],
                p_hat,
                stderr,
                replicas: cfg.replicas,
            }
        })
        .collect())
}
