//! Desk-scale experiment checks beyond the acceptance gate: the per-op
//! tolerance examples that need a full harness run. Fixed seeds make each a
//! frozen regression.

use lerw::config::{parse_config, Alpha, CliOverrides, ExperimentConfig, ExperimentKind};
use lerw::estimators::{estimate_survival_on_grid, sigma_scaling_experiment};
use lerw::runner::run_experiment;

fn cfg_for(kind: ExperimentKind) -> ExperimentConfig {
    let cli = CliOverrides {
        experiment: Some(kind),
        ..CliOverrides::default()
    };
    parse_config(None, &cli).unwrap()
}

/// sigma(N) a_hat(sigma(N)) / N concentrates near 1: mean within 1 +- 0.07
/// at N = 2^12, alpha = 0.4, with a valid censoring rate.
#[test]
fn sigma_scaling_concentrates_at_desk_scale() {
    let mut cfg = cfg_for(ExperimentKind::SigmaScaling);
    cfg.n_scale = 1 << 12;
    cfg.alpha = Alpha(0.4);
    cfg.replicas = 2000;
    cfg.master_seed = 42;
    let run = run_experiment(&cfg).unwrap();
    let mean = run.summary["results"]["mean"].as_f64().unwrap();
    assert!((mean - 1.0).abs() <= 0.07, "mean = {mean}");
    assert!(run.manifest.valid);
    assert!(run.manifest.censoring.fraction() <= 0.1);
}

/// The censoring quality gate: a path cap far below sigma(N) censors every
/// replica and the experiment reports failure rather than biased numbers.
#[test]
fn sigma_scaling_censors_short_paths() {
    let mut cfg = cfg_for(ExperimentKind::SigmaScaling);
    cfg.n_scale = 512;
    cfg.alpha = Alpha(0.4);
    cfg.replicas = 50;
    cfg.path_len = Some(520); // sigma(512) cannot fit with its margin
    let grid: Vec<u64> = (0..=8).map(|i| 512 + 8 * i).collect();
    let curve = estimate_survival_on_grid(&cfg, &grid).unwrap();
    let result = sigma_scaling_experiment(&cfg, &curve);
    match result {
        Err(lerw::error::Error::Degenerate(_)) => {}
        Ok(out) => {
            assert!(
                !out.censoring.is_valid(),
                "censoring must flag the run invalid: {:?}",
                out.censoring
            );
        }
        Err(e) => panic!("unexpected error: {e}"),
    }
}

/// tau-clt with the ladder-fitted decay exponent: q in (0, 1), and the
/// normalized statistic passes the same variance/correlation bands as the
/// F_N route (the two normalizations agree when sigma * a(sigma) ~ N ~
/// sigma * tau).
#[test]
fn tau_clt_with_fitted_q_matches_the_bands() {
    let mut cfg = cfg_for(ExperimentKind::TauClt);
    cfg.n_scale = 1 << 12;
    cfg.alpha = Alpha(0.4);
    cfg.replicas = 4000;
    cfg.master_seed = 42;
    let run = run_experiment(&cfg).unwrap();
    let results = &run.summary["results"];
    let q = results["q"].as_f64().unwrap();
    assert!(q > 0.02 && q < 0.3, "fitted q = {q}");
    let d = &results["diagnostics"];
    assert_eq!(d["pass_variance"], true, "diagnostics: {d}");
    assert_eq!(d["pass_correlation"], true, "diagnostics: {d}");
    assert_eq!(d["pass_kurtosis"], true, "diagnostics: {d}");
    assert_eq!(run.manifest.censoring.censored, 0);
    // ladder table present alongside the statistic table
    assert!(run.tables.iter().any(|t| t.name == "scale_decay"));
}

/// Dimension sanity for the CLT route: on Z the per-step variance is 1, so
/// the normalized statistic's variance is 1 within 10%.
#[test]
fn clt_dim1_variance_near_one() {
    let mut cfg = cfg_for(ExperimentKind::Clt);
    cfg.n_scale = 1024;
    cfg.alpha = Alpha(0.4);
    cfg.dim = 1;
    cfg.replicas = 3000;
    cfg.master_seed = 42;
    cfg.path_len = Some(16384); // 1-D erasure consumes far more steps per jump
    let run = run_experiment(&cfg).unwrap();
    let d = &run.summary["results"]["diagnostics"];
    let var = d["component_variance"][0].as_f64().unwrap();
    assert!((var - 1.0).abs() <= 0.1, "variance = {var}");
    assert!(run.manifest.censoring.is_valid());
}
