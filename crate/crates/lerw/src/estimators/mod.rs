//! Monte Carlo estimators for the scalar quantities of the windowed-erasure
//! theory: survival probabilities `a_hat(n)`, the `rho(N) / (N a(N))`
//! concentration, `sigma(N)`-scaling, the two-walk intersection exponent, and
//! the loop-free-gap decay.
//!
//! Estimation replicas for a survival curve and replicas of the experiment it
//! normalizes always live in disjoint stream namespaces (see
//! [`ExperimentConfig::curve_stream_index`]), so plug-in normalizations stay
//! independent of the samples.

pub mod power_law;
pub mod z_decay;
pub mod zeta;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::erasure::{erase_windowed, ErasureTrace};
use crate::error::{Error, Result};
use crate::rng::derive_stream;
use crate::walk::{generate_walk, WalkPath};

pub use power_law::{fit_power_law, linear_fit, LinearFit, PowerLawFit};
pub use z_decay::{estimate_z_decay, ZDecayPoint};
pub use zeta::{estimate_zeta, zeta_bootstrap_ci, ZetaEstimate};

/// Censored replicas are excluded from the estimate and invalidate the run
/// when they exceed this fraction.
pub const CENSOR_GATE: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Censoring {
    pub total: u64,
    pub censored: u64,
}

impl Censoring {
    pub fn none(total: u64) -> Self {
        Censoring { total, censored: 0 }
    }

    pub fn fraction(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.censored as f64 / self.total as f64
        }
    }

    pub fn is_valid(&self) -> bool {
        self.fraction() <= CENSOR_GATE
    }
}

/// One grid point of a survival curve.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurvivalEntry {
    pub n: usize,
    pub a_hat: f64,
    pub stderr: f64,
    pub replicas: u64,
}

/// Monte Carlo estimates of the survival probability `a_hat(n)` = fraction of
/// replicas whose index `n` survives windowed erasure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurvivalCurve {
    pub alpha: f64,
    pub n_scale: u64,
    pub window: usize,
    pub entries: Vec<SurvivalEntry>,
}

impl SurvivalCurve {
    /// Exact grid lookup.
    pub fn at(&self, n: usize) -> Option<f64> {
        self.entries
            .binary_search_by_key(&n, |e| e.n)
            .ok()
            .map(|i| self.entries[i].a_hat)
    }

    /// Value at `n`, log-linearly interpolated between bracketing grid
    /// points. Errors when `n` lies outside the grid range.
    ///
    /// Falls back to plain linear interpolation when a bracket value is zero
    /// (log undefined) or the lower bracket is `n = 0`.
    pub fn interpolate(&self, n: usize) -> Result<f64> {
        if let Some(a) = self.at(n) {
            return Ok(a);
        }
        let hi_idx = self.entries.partition_point(|e| e.n < n);
        if hi_idx == 0 || hi_idx == self.entries.len() {
            return Err(Error::CurveCoverage(n));
        }
        let lo = &self.entries[hi_idx - 1];
        let hi = &self.entries[hi_idx];
        if lo.a_hat > 0.0 && hi.a_hat > 0.0 && lo.n > 0 {
            let (ln_lo, ln_hi) = ((lo.n as f64).ln(), (hi.n as f64).ln());
            let t = ((n as f64).ln() - ln_lo) / (ln_hi - ln_lo);
            Ok((lo.a_hat.ln() + t * (hi.a_hat.ln() - lo.a_hat.ln())).exp())
        } else {
            let t = (n - lo.n) as f64 / (hi.n - lo.n) as f64;
            Ok(lo.a_hat + t * (hi.a_hat - lo.a_hat))
        }
    }

    /// Least-squares power-law fit `a_hat(n) ~ amplitude * n^(-exponent)`
    /// over the positive entries of the curve.
    pub fn fit_exponent(&self) -> Result<PowerLawFit> {
        let points: Vec<(f64, f64)> = self
            .entries
            .iter()
            .filter(|e| e.n > 0 && e.a_hat > 0.0)
            .map(|e| (e.n as f64, e.a_hat))
            .collect();
        if points.len() < 3 {
            return Err(Error::InsufficientData(
                "fewer than 3 positive survival entries to fit".to_string(),
            ));
        }
        let range = (points[0].0, points[points.len() - 1].0);
        fit_power_law(&points, range)
    }
}

/// Per-replica samples of a concentration observable, with the replica
/// stream index kept alongside each sample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioSamples {
    pub n_scale: u64,
    pub alpha: f64,
    pub stream_indices: Vec<u64>,
    pub samples: Vec<f64>,
    pub mean: f64,
    /// Sample standard deviation; `None` with fewer than 2 samples.
    pub std: Option<f64>,
}

impl RatioSamples {
    pub fn from_samples(
        n_scale: u64,
        alpha: f64,
        stream_indices: Vec<u64>,
        samples: Vec<f64>,
    ) -> Self {
        assert_eq!(stream_indices.len(), samples.len());
        let (mean, std) = mean_and_std(&samples);
        RatioSamples {
            n_scale,
            alpha,
            stream_indices,
            samples,
            mean,
            std,
        }
    }

    /// Recompute mean/std from the stored samples (must match the stored
    /// values exactly; used by invariant tests).
    pub fn recompute(&self) -> (f64, Option<f64>) {
        mean_and_std(&self.samples)
    }
}

pub(crate) fn mean_and_std(samples: &[f64]) -> (f64, Option<f64>) {
    if samples.is_empty() {
        return (f64::NAN, None);
    }
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    if samples.len() < 2 {
        return (mean, None);
    }
    let ss = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
    (mean, Some((ss / (samples.len() - 1) as f64).sqrt()))
}

/// Parallel map over the experiment-namespace replicas: each replica gets its
/// own stream, generates one walk of `path_points` points, erases it with
/// `window`, and reduces via `f`. Results arrive in replica order regardless
/// of scheduling.
pub(crate) fn map_experiment_replicas<T: Send>(
    cfg: &ExperimentConfig,
    path_points: usize,
    window: usize,
    f: impl Fn(u64, &WalkPath, &ErasureTrace) -> T + Sync,
) -> Vec<T> {
    (0..cfg.replicas)
        .into_par_iter()
        .map(|k| {
            let stream_index = cfg.experiment_stream_index(k);
            let mut rng = derive_stream(cfg.master_seed, stream_index);
            let path = generate_walk(&mut rng, path_points - 1, cfg.dim);
            let trace = erase_windowed(path.points(), window);
            f(stream_index, &path, &trace)
        })
        .collect()
}

/// Parallel map over experiment-namespace replicas that only need the walk.
pub(crate) fn map_experiment_walks<T: Send>(
    cfg: &ExperimentConfig,
    f: impl Fn(u64, &mut crate::rng::RngStream) -> T + Sync,
) -> Vec<T> {
    (0..cfg.replicas)
        .into_par_iter()
        .map(|k| {
            let stream_index = cfg.experiment_stream_index(k);
            let mut rng = derive_stream(cfg.master_seed, stream_index);
            f(stream_index, &mut rng)
        })
        .collect()
}

/// The N-th jump time of a trace, provided the finite path was long enough
/// to compute it exactly as an infinite walk would (every window involved was
/// unclamped). Returns `None` when the replica must be censored.
pub(crate) fn sigma_n_exact(
    trace: &ErasureTrace,
    n: usize,
    window: usize,
    last_index: usize,
) -> Option<usize> {
    if trace.sigma.len() <= n {
        return None;
    }
    let unclamped = if n == 0 {
        window <= last_index
    } else {
        trace.sigma[n - 1] + 1 + window <= last_index
    };
    unclamped.then(|| trace.sigma[n])
}

fn require_finite_window(cfg: &ExperimentConfig) -> Result<usize> {
    cfg.raw_window()?.ok_or_else(|| {
        Error::invalid("alpha", "this estimator requires a finite window")
    })
}

fn require_margin_rule(cfg: &ExperimentConfig) -> Result<()> {
    if cfg.margin_factor < 1.0 {
        return Err(Error::invalid(
            "margin_factor",
            format!(
                "insufficient path margin: the margin rule (path length >= observed range + W) \
                 requires margin_factor >= 1, got {}",
                cfg.margin_factor
            ),
        ));
    }
    Ok(())
}

/// Estimate the survival curve on the configured grid
/// (`cfg.n_grid` or the power-of-two default).
pub fn estimate_survival(cfg: &ExperimentConfig) -> Result<SurvivalCurve> {
    estimate_survival_on_grid(cfg, &cfg.survival_grid())
}

/// Estimate the survival curve on an explicit grid of indices. Uses the
/// curve stream namespace (replica `k` -> stream `k`).
pub fn estimate_survival_on_grid(cfg: &ExperimentConfig, grid: &[u64]) -> Result<SurvivalCurve> {
    if cfg.replicas < 2 {
        return Err(Error::InsufficientData(
            "survival estimation needs at least 2 replicas".to_string(),
        ));
    }
    if grid.is_empty() {
        return Err(Error::invalid("n_grid", "grid must be nonempty"));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("n_grid", "grid must be strictly increasing"));
    }
    require_margin_rule(cfg)?;
    let window = require_finite_window(cfg)?;
    let max_n = *grid.last().unwrap() as usize;
    let path_points = max_n + 1 + cfg.margin_points(window);
    cfg.ensure_path_budget(path_points)?;

    let flags: Vec<Vec<bool>> = (0..cfg.replicas)
        .into_par_iter()
        .map(|k| {
            let mut rng = derive_stream(cfg.master_seed, cfg.curve_stream_index(k));
            let path = generate_walk(&mut rng, path_points - 1, cfg.dim);
            let trace = erase_windowed(path.points(), window);
            grid.iter().map(|&n| trace.y_flags[n as usize]).collect()
        })
        .collect();

    let entries = grid
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let survived = flags.iter().filter(|row| row[i]).count() as u64;
            let a_hat = survived as f64 / cfg.replicas as f64;
            let stderr = (a_hat * (1.0 - a_hat) / cfg.replicas as f64).sqrt();
            SurvivalEntry {
                n: n as usize,
                a_hat,
                stderr,
                replicas: cfg.replicas,
            }
        })
        .collect();

    Ok(SurvivalCurve {
        alpha: cfg.alpha.value(),
        n_scale: cfg.n_scale,
        window,
        entries,
    })
}

/// One rung of a scale ladder: survival of index `N'` under its own
/// co-scaled window `floor(N'^alpha)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScaleDecayPoint {
    pub n_scale: u64,
    pub window: usize,
    pub a_hat: f64,
    pub stderr: f64,
    pub replicas: u64,
}

/// Estimate `a_hat(N')` for each scale `N'` in `scales`, window co-scaling
/// as `floor(N'^alpha)`. The decay of these points across scales is the
/// exponent the tau normalization is built from; at a fixed window the
/// in-index survival curve flattens, so that curve cannot supply it.
///
/// Ladder points share curve-namespace streams (common random numbers
/// across scales), keeping them independent of the experiment replicas.
pub fn estimate_scale_decay(
    cfg: &ExperimentConfig,
    scales: &[u64],
) -> Result<Vec<ScaleDecayPoint>> {
    if cfg.replicas < 2 {
        return Err(Error::InsufficientData(
            "scale-decay estimation needs at least 2 replicas".to_string(),
        ));
    }
    if scales.is_empty() {
        return Err(Error::invalid("scales", "ladder must be nonempty"));
    }
    if scales.iter().any(|&s| s == 0) || scales.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid(
            "scales",
            "ladder must be strictly increasing and positive",
        ));
    }
    require_margin_rule(cfg)?;
    let alpha = cfg.alpha.value();
    if alpha.is_infinite() {
        return Err(Error::invalid("alpha", "scale decay requires a finite window"));
    }

    let mut points = Vec::with_capacity(scales.len());
    for &scale in scales {
        let window = crate::erasure::window_length(scale, alpha, usize::MAX)?;
        let n = scale as usize;
        let path_points = n + 1 + cfg.margin_points(window);
        cfg.ensure_path_budget(path_points)?;
        let survived: u64 = (0..cfg.replicas)
            .into_par_iter()
            .map(|k| {
                let mut rng = derive_stream(cfg.master_seed, cfg.curve_stream_index(k));
                let path = generate_walk(&mut rng, path_points - 1, cfg.dim);
                let trace = erase_windowed(path.points(), window);
                u64::from(trace.y_flags[n])
            })
            .sum();
        let a_hat = survived as f64 / cfg.replicas as f64;
        points.push(ScaleDecayPoint {
            n_scale: scale,
            window,
            a_hat,
            stderr: (a_hat * (1.0 - a_hat) / cfg.replicas as f64).sqrt(),
            replicas: cfg.replicas,
        });
    }
    Ok(points)
}

/// Fit the decay exponent of a scale ladder: `a_hat(N') ~ amplitude *
/// N'^(-q)`.
pub fn fit_scale_decay(points: &[ScaleDecayPoint]) -> Result<PowerLawFit> {
    let positive: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.a_hat > 0.0)
        .map(|p| (p.n_scale as f64, p.a_hat))
        .collect();
    if positive.len() < 3 {
        return Err(Error::InsufficientData(
            "fewer than 3 positive ladder points to fit".to_string(),
        ));
    }
    let range = (positive[0].0, positive[positive.len() - 1].0);
    fit_power_law(&positive, range)
}

/// Output of the `rho(N) / (N a_hat(N))` experiment.
#[derive(Clone, Debug, Serialize)]
pub struct RhoRatioOutput {
    pub ratios: RatioSamples,
    /// Raw survivor counts `rho(N)` per replica, aligned with the samples.
    pub rho_values: Vec<usize>,
    /// The plug-in normalization `a_hat(N)` taken from the curve.
    pub a_at_n: f64,
}

/// One sample `rho(N) / (N * a_hat(N))` per replica, drawn from the
/// experiment stream namespace (disjoint from the curve's).
pub fn rho_ratio_experiment(
    cfg: &ExperimentConfig,
    curve: &SurvivalCurve,
) -> Result<RhoRatioOutput> {
    let n = cfg.n_scale as usize;
    let a_at_n = curve
        .at(n)
        .ok_or(Error::CurveCoverage(n))?;
    if a_at_n <= 0.0 {
        return Err(Error::Degenerate(
            "a_hat(N) = 0 cannot normalize the ratio".to_string(),
        ));
    }
    require_margin_rule(cfg)?;
    let window = require_finite_window(cfg)?;
    let path_points = n + 1 + cfg.margin_points(window);
    cfg.ensure_path_budget(path_points)?;

    let per_replica: Vec<(u64, usize)> =
        map_experiment_replicas(cfg, path_points, window, |idx, _path, trace| {
            (idx, trace.rho[n])
        });

    let stream_indices: Vec<u64> = per_replica.iter().map(|&(idx, _)| idx).collect();
    let rho_values: Vec<usize> = per_replica.iter().map(|&(_, rho)| rho).collect();
    let denom = n as f64 * a_at_n;
    let samples: Vec<f64> = rho_values.iter().map(|&r| r as f64 / denom).collect();

    Ok(RhoRatioOutput {
        ratios: RatioSamples::from_samples(cfg.n_scale, cfg.alpha.value(), stream_indices, samples),
        rho_values,
        a_at_n,
    })
}

/// Output of the `sigma(N) a_hat(sigma(N)) / N` experiment.
#[derive(Clone, Debug, Serialize)]
pub struct SigmaScalingOutput {
    pub ratios: RatioSamples,
    /// Realized jump times `sigma(N)`, aligned with the samples.
    pub sigma_values: Vec<usize>,
    /// Interpolated `a_hat(sigma(N))`, aligned with the samples.
    pub a_values: Vec<f64>,
    pub censoring: Censoring,
}

/// One sample `sigma(N) * a_hat(sigma(N)) / N` per replica. Replicas whose
/// path was too short to realize `sigma(N)` exactly are censored, excluded,
/// and counted.
pub fn sigma_scaling_experiment(
    cfg: &ExperimentConfig,
    curve: &SurvivalCurve,
) -> Result<SigmaScalingOutput> {
    let n = cfg.n_scale as usize;
    let window = require_finite_window(cfg)?;
    let path_points = cfg.sigma_path_points(window);
    cfg.ensure_path_budget(path_points)?;

    let per_replica: Vec<(u64, Option<usize>)> =
        map_experiment_replicas(cfg, path_points, window, |idx, path, trace| {
            (idx, sigma_n_exact(trace, n, window, path.len() - 1))
        });

    let censored = per_replica.iter().filter(|(_, s)| s.is_none()).count() as u64;
    let mut stream_indices = Vec::new();
    let mut sigma_values = Vec::new();
    let mut a_values = Vec::new();
    let mut samples = Vec::new();
    for (idx, sigma_n) in per_replica {
        if let Some(s) = sigma_n {
            let a = curve.interpolate(s)?;
            stream_indices.push(idx);
            sigma_values.push(s);
            a_values.push(a);
            samples.push(s as f64 * a / n as f64);
        }
    }
    if samples.is_empty() {
        return Err(Error::Degenerate(
            "every replica was censored; increase path_len or margin_factor".to_string(),
        ));
    }

    Ok(SigmaScalingOutput {
        ratios: RatioSamples::from_samples(cfg.n_scale, cfg.alpha.value(), stream_indices, samples),
        sigma_values,
        a_values,
        censoring: Censoring {
            total: cfg.replicas,
            censored,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Alpha, ExperimentKind};
    use crate::test_support::test_cfg;

    #[test]
    fn w1_survival_is_identically_one() {
        let mut cfg = test_cfg(ExperimentKind::Survival);
        cfg.alpha = Alpha(0.0); // W = 1
        cfg.n_scale = 64;
        cfg.replicas = 200;
        let curve = estimate_survival(&cfg).unwrap();
        assert_eq!(curve.window, 1);
        for e in &curve.entries {
            assert_eq!(e.a_hat, 1.0, "n = {}", e.n);
            assert_eq!(e.stderr, 0.0);
        }
    }

    #[test]
    fn w2_survival_at_zero_matches_enumeration() {
        // Exact enumeration oracle: sigma(0) > 0 iff the walk returns to the
        // origin at step 2 (step 1 cannot return), i.e. 6 of the 36 ordered
        // step pairs. So a_hat(0) -> 5/6 for W = 2 on Z^3.
        let mut returning = 0;
        for first in 0..6 {
            for second in 0..6 {
                if first >> 1 == second >> 1 && first & 1 != second & 1 {
                    returning += 1;
                }
            }
        }
        let p_exact = 1.0 - returning as f64 / 36.0;

        let mut cfg = test_cfg(ExperimentKind::Survival);
        // N = 4, alpha = 0.5 -> W = 2
        cfg.n_scale = 4;
        cfg.alpha = Alpha(0.5);
        cfg.replicas = 100_000;
        cfg.n_grid = Some(vec![0, 1, 2, 4]);
        let curve = estimate_survival(&cfg).unwrap();
        assert_eq!(curve.window, 2);
        let a0 = curve.at(0).unwrap();
        let tol = 4.0 * (p_exact * (1.0 - p_exact) / cfg.replicas as f64).sqrt();
        assert!((a0 - p_exact).abs() < tol, "a_hat(0) = {a0}, expect {p_exact}");
    }

    #[test]
    fn survival_is_seed_deterministic() {
        let mut cfg = test_cfg(ExperimentKind::Survival);
        cfg.n_scale = 32;
        cfg.replicas = 50;
        let a = estimate_survival(&cfg).unwrap();
        let b = estimate_survival(&cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn survival_consistent_between_fast_and_naive_erasure() {
        // Same replicas re-run through the brute-force oracle give the exact
        // same flags, hence the same curve.
        let mut cfg = test_cfg(ExperimentKind::Survival);
        cfg.n_scale = 16;
        cfg.alpha = Alpha(0.5); // W = 4
        cfg.replicas = 500;
        let curve = estimate_survival(&cfg).unwrap();

        let window = 4;
        let grid = cfg.survival_grid();
        let path_points = 16 + 1 + cfg.margin_points(window);
        for (i, &n) in grid.iter().enumerate() {
            let mut survived = 0u64;
            for k in 0..cfg.replicas {
                let mut rng = derive_stream(cfg.master_seed, cfg.curve_stream_index(k));
                let path = generate_walk(&mut rng, path_points - 1, cfg.dim);
                let trace = crate::erasure::erase_windowed_naive(path.points(), window);
                survived += u64::from(trace.y_flags[n as usize]);
            }
            let a_naive = survived as f64 / cfg.replicas as f64;
            assert_eq!(a_naive, curve.entries[i].a_hat, "n = {n}");
        }
    }

    #[test]
    fn survival_agrees_across_seeds_and_oracles() {
        // Disjoint-seed cross-check: the fast-path estimate and an
        // independent naive-oracle estimate of a_hat(50) at W = 2 must agree
        // within 4 combined binomial standard errors.
        let mut cfg = test_cfg(ExperimentKind::Survival);
        cfg.n_scale = 4;
        cfg.alpha = Alpha(0.5); // W = 2
        cfg.replicas = 100_000;
        cfg.n_grid = Some(vec![50]);
        let fast = estimate_survival(&cfg).unwrap();
        let a_fast = fast.entries[0].a_hat;

        let window = 2;
        let path_points = 50 + 1 + cfg.margin_points(window);
        let other_seed = 20_260_809;
        let survived: u64 = (0..cfg.replicas)
            .into_par_iter()
            .map(|k| {
                let mut rng = derive_stream(other_seed, k);
                let path = generate_walk(&mut rng, path_points - 1, 3);
                let trace = crate::erasure::erase_windowed_naive(path.points(), window);
                u64::from(trace.y_flags[50])
            })
            .sum();
        let a_naive = survived as f64 / cfg.replicas as f64;
        let stderr = |a: f64| (a * (1.0 - a) / cfg.replicas as f64).sqrt();
        let tol = 4.0 * (stderr(a_fast) + stderr(a_naive));
        assert!(
            (a_fast - a_naive).abs() < tol,
            "a_fast = {a_fast}, a_naive = {a_naive}, tol = {tol}"
        );
    }

    #[test]
    fn survival_rejects_insufficient_margin() {
        let mut cfg = test_cfg(ExperimentKind::Survival);
        cfg.margin_factor = 0.5;
        assert!(matches!(
            estimate_survival(&cfg),
            Err(Error::InvalidParameter { .. })
        ));
    }

    #[test]
    fn survival_rejects_single_replica() {
        let mut cfg = test_cfg(ExperimentKind::Survival);
        cfg.replicas = 1;
        assert!(estimate_survival(&cfg).is_err());
    }

    #[test]
    fn rho_ratio_w1_fixed_point() {
        // With W = 1 nothing is erased: rho(N) = N + 1 and a == 1, so every
        // sample equals (N + 1) / N.
        let mut cfg = test_cfg(ExperimentKind::RhoRatio);
        cfg.alpha = Alpha(0.0);
        cfg.n_scale = 100;
        cfg.replicas = 50;
        let curve = estimate_survival(&cfg).unwrap();
        let out = rho_ratio_experiment(&cfg, &curve).unwrap();
        for &s in &out.ratios.samples {
            assert_eq!(s, 101.0 / 100.0);
        }
        assert!((out.ratios.mean - 1.01).abs() < 1e-12);
    }

    #[test]
    fn rho_ratio_flags_single_replica_std() {
        let mut cfg = test_cfg(ExperimentKind::RhoRatio);
        cfg.alpha = Alpha(0.0);
        cfg.n_scale = 10;
        cfg.replicas = 2;
        let curve = estimate_survival(&cfg).unwrap();
        cfg.replicas = 1;
        let out = rho_ratio_experiment(&cfg, &curve).unwrap();
        assert_eq!(out.ratios.samples.len(), 1);
        assert!(out.ratios.std.is_none());
    }

    #[test]
    fn rho_ratio_rejects_zero_normalization() {
        let curve = SurvivalCurve {
            alpha: 0.4,
            n_scale: 10,
            window: 2,
            entries: vec![SurvivalEntry {
                n: 10,
                a_hat: 0.0,
                stderr: 0.0,
                replicas: 10,
            }],
        };
        let mut cfg = test_cfg(ExperimentKind::RhoRatio);
        cfg.n_scale = 10;
        assert!(matches!(
            rho_ratio_experiment(&cfg, &curve),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn sigma_scaling_w1_fixed_point() {
        // W = 1: sigma(N) = N and a == 1, so every sample is exactly 1.
        let mut cfg = test_cfg(ExperimentKind::SigmaScaling);
        cfg.alpha = Alpha(0.0);
        cfg.n_scale = 64;
        cfg.replicas = 40;
        let grid: Vec<u64> = (0..=8).map(|i| 32 + 32 * i).collect();
        let curve = estimate_survival_on_grid(&cfg, &grid).unwrap();
        let out = sigma_scaling_experiment(&cfg, &curve).unwrap();
        assert_eq!(out.censoring.censored, 0);
        for (&s, &sample) in out.sigma_values.iter().zip(&out.ratios.samples) {
            assert_eq!(s, 64);
            assert_eq!(sample, 1.0);
        }
    }

    #[test]
    fn ratio_samples_mean_std_roundtrip() {
        let r = RatioSamples::from_samples(8, 0.4, vec![10, 11, 12], vec![0.9, 1.0, 1.1]);
        let (mean, std) = r.recompute();
        assert_eq!(mean, r.mean);
        assert_eq!(std, r.std);
        assert!((r.mean - 1.0).abs() < 1e-12);
    }

    #[test]
    fn interpolation_is_log_linear_and_bounded() {
        let curve = SurvivalCurve {
            alpha: 0.4,
            n_scale: 100,
            window: 6,
            entries: vec![
                SurvivalEntry { n: 10, a_hat: 0.8, stderr: 0.0, replicas: 10 },
                SurvivalEntry { n: 100, a_hat: 0.4, stderr: 0.0, replicas: 10 },
            ],
        };
        assert_eq!(curve.interpolate(10).unwrap(), 0.8);
        assert_eq!(curve.interpolate(100).unwrap(), 0.4);
        let mid = curve.interpolate(32).unwrap(); // ~geometric midpoint
        let expected = (0.8f64.ln() + (32f64.ln() - 10f64.ln()) / (100f64.ln() - 10f64.ln())
            * (0.4f64.ln() - 0.8f64.ln()))
        .exp();
        assert!((mid - expected).abs() < 1e-12);
        assert!(curve.interpolate(5).is_err());
        assert!(curve.interpolate(101).is_err());
    }
}
