//! CLT experiments for the windowed walk.
//!
//! Two normalizations of the erased walk's position are checked against the
//! isotropic normal target with per-component variance `1/d`:
//!
//! * `S_{F_N} / sqrt(N)` with the random re-indexing
//!   `F_N = floor(sigma(N) * a_hat(sigma(N)))`;
//! * `S_{sigma(N)} * sqrt(tau_N) / sqrt(N)` with `tau_N = N^(-q/(1-q))` and
//!   `q` the fitted survival-decay exponent.

use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::estimators::{
    map_experiment_replicas, sigma_n_exact, Censoring, PowerLawFit, SurvivalCurve,
};
use crate::stats::{DiagnosticTolerances, GaussianDiagnostics};
use crate::walk::LatticePoint;

/// `tau_N = N^(-q / (1 - q))`.
pub fn tau_n(n_scale: u64, q: f64) -> f64 {
    (n_scale as f64).powf(-q / (1.0 - q))
}

#[derive(Clone, Debug, Serialize)]
pub struct CltRow {
    pub stream_index: u64,
    pub sigma_n: usize,
    pub f_n: usize,
    /// Raw walk position `S_{F_N}`.
    #[serde(skip)]
    pub endpoint: LatticePoint,
}

#[derive(Clone, Debug, Serialize)]
pub struct CltOutput {
    pub diagnostics: GaussianDiagnostics,
    #[serde(skip)]
    pub rows: Vec<CltRow>,
    pub censoring: Censoring,
}

/// Collect `S_{F_N} / sqrt(N)` over the experiment replicas and run the
/// Gaussian diagnostics. Replicas that cannot realize `sigma(N)` exactly are
/// censored and counted.
pub fn clt_experiment(cfg: &ExperimentConfig, curve: &SurvivalCurve) -> Result<CltOutput> {
    let n = cfg.n_scale as usize;
    let window = cfg
        .raw_window()?
        .ok_or_else(|| Error::invalid("alpha", "the CLT experiment requires a finite window"))?;
    let path_points = cfg.sigma_path_points(window);
    cfg.ensure_path_budget(path_points)?;

    let per_replica: Vec<Result<Option<CltRow>>> =
        map_experiment_replicas(cfg, path_points, window, |idx, path, trace| {
            let last = path.len() - 1;
            let sigma = match sigma_n_exact(trace, n, window, last) {
                Some(s) => s,
                None => return Ok(None),
            };
            let a = curve.interpolate(sigma)?;
            let f_n = (sigma as f64 * a).floor() as usize;
            if f_n > last {
                return Ok(None);
            }
            Ok(Some(CltRow {
                stream_index: idx,
                sigma_n: sigma,
                f_n,
                endpoint: path.point(f_n).clone(),
            }))
        });

    let mut rows = Vec::new();
    let mut censored = 0u64;
    for r in per_replica {
        match r? {
            Some(row) => rows.push(row),
            None => censored += 1,
        }
    }
    let diagnostics = diagnostics_of(cfg, &rows, |row| (row.endpoint.coords(), 1.0))?;
    Ok(CltOutput {
        diagnostics,
        rows,
        censoring: Censoring {
            total: cfg.replicas,
            censored,
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TauCltRow {
    pub stream_index: u64,
    pub sigma_n: usize,
    /// Raw walk position `S_{sigma(N)}`.
    #[serde(skip)]
    pub endpoint: LatticePoint,
}

#[derive(Clone, Debug, Serialize)]
pub struct TauCltOutput {
    pub diagnostics: GaussianDiagnostics,
    #[serde(skip)]
    pub rows: Vec<TauCltRow>,
    pub censoring: Censoring,
    pub q: f64,
    pub tau: f64,
}

/// Collect `S_{sigma(N)} * sqrt(tau_N) / sqrt(N)` and run the Gaussian
/// diagnostics. `fit` must supply a decay exponent `q` in `(0, 1)`.
pub fn tau_clt_experiment(cfg: &ExperimentConfig, fit: &PowerLawFit) -> Result<TauCltOutput> {
    let q = fit.exponent;
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::invalid(
            "q",
            format!("tau normalization needs q in (0, 1), fitted q = {q}"),
        ));
    }
    let n = cfg.n_scale as usize;
    let window = cfg
        .raw_window()?
        .ok_or_else(|| Error::invalid("alpha", "the tau-CLT experiment requires a finite window"))?;
    let path_points = cfg.sigma_path_points(window);
    cfg.ensure_path_budget(path_points)?;

    let per_replica: Vec<Option<TauCltRow>> =
        map_experiment_replicas(cfg, path_points, window, |idx, path, trace| {
            let last = path.len() - 1;
            sigma_n_exact(trace, n, window, last).map(|sigma| TauCltRow {
                stream_index: idx,
                sigma_n: sigma,
                endpoint: path.point(sigma).clone(),
            })
        });

    let mut rows = Vec::new();
    let mut censored = 0u64;
    for r in per_replica {
        match r {
            Some(row) => rows.push(row),
            None => censored += 1,
        }
    }
    let tau = tau_n(cfg.n_scale, q);
    let sqrt_tau = tau.sqrt();
    let diagnostics = diagnostics_of(cfg, &rows, |row| (row.endpoint.coords(), sqrt_tau))?;
    Ok(TauCltOutput {
        diagnostics,
        rows,
        censoring: Censoring {
            total: cfg.replicas,
            censored,
        },
        q,
        tau,
    })
}

/// Scale raw endpoints by `extra / sqrt(N)` and evaluate the diagnostics at
/// the isotropic target `1/d`.
fn diagnostics_of<R>(
    cfg: &ExperimentConfig,
    rows: &[R],
    accessor: impl Fn(&R) -> (&[i64], f64),
) -> Result<GaussianDiagnostics> {
    if rows.is_empty() {
        return Err(Error::Degenerate(
            "every replica was censored; increase path_len or margin_factor".to_string(),
        ));
    }
    let sqrt_n = (cfg.n_scale as f64).sqrt();
    let mut samples = Vec::with_capacity(rows.len() * cfg.dim);
    for row in rows {
        let (coords, extra) = accessor(row);
        samples.extend(coords.iter().map(|&c| c as f64 * extra / sqrt_n));
    }
    GaussianDiagnostics::from_samples(
        &samples,
        cfg.dim,
        1.0 / cfg.dim as f64,
        DiagnosticTolerances::for_dim(cfg.dim),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Alpha, ExperimentKind};
    use crate::estimators::estimate_survival_on_grid;
    use crate::rng::derive_stream;
    use crate::test_support::test_cfg;
    use crate::walk::generate_walk;

    /// With W = 1 (alpha = 0) nothing is erased: sigma(N) = N, a == 1,
    /// F_N = N, and the statistic is the plain SRW endpoint S_N / sqrt(N).
    #[test]
    fn w1_reduces_to_plain_srw_statistic() {
        let mut cfg = test_cfg(ExperimentKind::Clt);
        cfg.alpha = Alpha(0.0);
        cfg.n_scale = 256;
        cfg.replicas = 64;
        let grid: Vec<u64> = (1..=8).map(|i| 128 * i).collect();
        let curve = estimate_survival_on_grid(&cfg, &grid).unwrap();
        let out = clt_experiment(&cfg, &curve).unwrap();
        assert_eq!(out.censoring.censored, 0);
        for row in &out.rows {
            assert_eq!(row.sigma_n, 256);
            assert_eq!(row.f_n, 256);
            // exact code-path comparison: regenerate the same stream's walk
            let mut rng = derive_stream(cfg.master_seed, row.stream_index);
            let path = generate_walk(&mut rng, 256, cfg.dim);
            assert_eq!(&row.endpoint, path.point(256));
        }
    }

    #[test]
    fn tau_q_outside_unit_interval_is_rejected() {
        let cfg = test_cfg(ExperimentKind::TauClt);
        let mut fit = PowerLawFit {
            exponent: 1.5,
            amplitude: 1.0,
            stderr: 0.0,
            r_squared: 1.0,
            fit_range: (1.0, 10.0),
        };
        assert!(tau_clt_experiment(&cfg, &fit).is_err());
        fit.exponent = -0.1;
        assert!(tau_clt_experiment(&cfg, &fit).is_err());
        fit.exponent = 0.0;
        assert!(tau_clt_experiment(&cfg, &fit).is_err());
    }

    #[test]
    fn tau_n_algebra() {
        // q -> 0 gives tau -> 1 (plain SRW corner)
        assert!((tau_n(4096, 1e-12) - 1.0).abs() < 1e-9);
        let q: f64 = 0.2;
        let tau = tau_n(1024, q);
        assert!((tau - 1024f64.powf(-0.25)).abs() < 1e-12);
    }

    /// Closed-loop harness validation: replace sigma(N) by exactly
    /// N^(1/(1-q)) and the endpoint by i.i.d. normal vectors of the matching
    /// walk variance sigma/3 per component. The tau normalization must bring
    /// the statistic back to variance 1/3, kurtosis 3, no cross-correlation.
    #[test]
    fn synthetic_tau_normalization_passes_diagnostics() {
        use rand::Rng;
        use rand::SeedableRng;
        use rand_distr::StandardNormal;

        let q = 0.15f64;
        let n_scale = 4096u64;
        let sigma = (n_scale as f64).powf(1.0 / (1.0 - q));
        let comp_sd = (sigma / 3.0).sqrt();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let replicas = 50_000;
        let sqrt_tau = tau_n(n_scale, q).sqrt();
        let sqrt_n = (n_scale as f64).sqrt();
        let samples: Vec<f64> = (0..3 * replicas)
            .map(|_| {
                let x: f64 = rng.sample(StandardNormal);
                x * comp_sd * sqrt_tau / sqrt_n
            })
            .collect();
        let diag = GaussianDiagnostics::from_samples(
            &samples,
            3,
            1.0 / 3.0,
            DiagnosticTolerances::for_dim(3),
        )
        .unwrap();
        assert!(diag.pass_all(), "{diag:?}");
        for v in &diag.component_variance {
            assert!((v - 1.0 / 3.0).abs() < 0.01, "variance = {v}");
        }
    }
}
