//! Acceptance suite: one test per claim the artifact must satisfy, each
//! printing a `PASS`/`FAIL` line (run with `--nocapture` to see them all).
//!
//! Every tolerance is pinned in this file. Monte Carlo criteria use fixed
//! seeds, so each check is a frozen regression, not a flaky statistical test.

use lerw::config::{parse_config, Alpha, CliOverrides, ExperimentConfig, ExperimentKind};
use lerw::erasure::{erase_full, erase_windowed, erase_windowed_naive};
use lerw::estimators::{estimate_survival, rho_ratio_experiment};
use lerw::rng::derive_stream;
use lerw::runner::run_experiment;
use lerw::walk::{generate_walk, LatticePoint};

use rand::Rng;
use rustc_hash::FxHashMap;
use std::collections::HashSet;
use std::time::Instant;

fn report(criterion: &str, ok: bool, detail: &str) {
    println!(
        "acceptance {criterion}: {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn cfg_for(kind: ExperimentKind) -> ExperimentConfig {
    let cli = CliOverrides {
        experiment: Some(kind),
        ..CliOverrides::default()
    };
    parse_config(None, &cli).unwrap()
}

/// Forward chronological loop erasure (independent oracle): keep a growing
/// erased path, truncate it at every revisit.
fn forward_erase(path: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut erased: Vec<LatticePoint> = Vec::new();
    let mut position: FxHashMap<&LatticePoint, usize> = FxHashMap::default();
    for p in path {
        if let Some(&k) = position.get(p) {
            for gone in erased.drain(k + 1..) {
                position.remove(&gone);
            }
        } else {
            position.insert(p, erased.len());
            erased.push(p.clone());
        }
    }
    erased
}

/// Criteria 1 + 2: bitwise oracle equivalence of the fast windowed erasure
/// against the brute-force scan on a fixed-seed corpus of 10^4 paths
/// (1..=2000 steps, W uniform in [1, steps]), full-window agreement with the
/// forward-erasure oracle (self-avoiding output), and every structural trace
/// invariant, all with zero tolerance.
#[test]
fn acceptance_01_02_oracle_equivalence_and_structure() {
    use rayon::prelude::*;
    const CORPUS: u64 = 10_000;
    const CORPUS_SEED: u64 = 0xC0FFEE;

    let started = Instant::now();
    (0..CORPUS).into_par_iter().for_each(|k| {
        let mut meta = derive_stream(CORPUS_SEED, k);
        let steps = 1 + (meta.gen_range(0..2000u32) as usize);
        let window = 1 + meta.gen_range(0..steps);
        let path = generate_walk(&mut meta, steps, 3);
        let pts = path.points();

        let fast = erase_windowed(pts, window);
        let naive = erase_windowed_naive(pts, window);
        assert_eq!(fast, naive, "trace mismatch: corpus path {k}, W = {window}");

        // criterion 2: structural invariants on every trace
        fast.validate(pts, window)
            .unwrap_or_else(|e| panic!("invariant violated on corpus path {k}: {e}"));

        // full-window reduction equals the forward-erasure oracle and is
        // self-avoiding
        let full = erase_windowed(pts, pts.len());
        assert_eq!(full, erase_full(pts), "full-window reduction differs: path {k}");
        assert_eq!(
            full.erased_path,
            forward_erase(pts),
            "forward-erasure oracle differs: path {k}"
        );
        let mut seen = HashSet::new();
        for p in &full.erased_path {
            assert!(seen.insert(p.clone()), "full erasure not self-avoiding: path {k}");
        }
    });
    let elapsed = started.elapsed().as_secs_f64();

    report(
        "1",
        elapsed < 60.0,
        &format!("oracle equivalence, {CORPUS} paths bitwise-equal in {elapsed:.1}s (< 60s)"),
    );
    report(
        "2",
        true,
        &format!("structural invariants hold on every trace of the {CORPUS}-path corpus"),
    );
}

/// Criterion 3: the ratio rho(N) / (N a_hat(N)) concentrates around 1 —
/// mean in [0.95, 1.05] at N = 2^14 and sample std strictly decreasing over
/// N in {2^10, 2^12, 2^14}, with disjoint curve/ratio stream namespaces.
#[test]
fn acceptance_03_rho_ratio_concentration() {
    let mut means = Vec::new();
    let mut stds = Vec::new();
    for exp in [10u32, 12, 14] {
        let mut cfg = cfg_for(ExperimentKind::RhoRatio);
        cfg.n_scale = 1 << exp;
        cfg.alpha = Alpha(0.4);
        cfg.replicas = 2000;
        cfg.master_seed = 42;
        let curve = estimate_survival(&cfg).unwrap();
        let out = rho_ratio_experiment(&cfg, &curve).unwrap();
        means.push(out.ratios.mean);
        stds.push(out.ratios.std.unwrap());
    }
    let mean_ok = means[2] >= 0.95 && means[2] <= 1.05;
    let std_ok = stds[0] > stds[1] && stds[1] > stds[2];
    report(
        "3",
        mean_ok && std_ok,
        &format!(
            "rho-ratio mean(2^14) = {:.4} in [0.95, 1.05]; std {:.4} > {:.4} > {:.4}",
            means[2], stds[0], stds[1], stds[2]
        ),
    );
}

/// Criterion 4: S_{F_N} / sqrt(N) at N = 2^14, alpha = 0.4, 10^4 replicas —
/// per-component variance in [0.30, 0.37], kurtosis in [2.7, 3.3],
/// |off-diagonal correlation| <= 0.05.
#[test]
fn acceptance_04_clt_normalization() {
    let mut cfg = cfg_for(ExperimentKind::Clt);
    cfg.n_scale = 1 << 14;
    cfg.alpha = Alpha(0.4);
    cfg.replicas = 10_000;
    cfg.master_seed = 42;
    let run = run_experiment(&cfg).unwrap();
    let d = &run.summary["results"]["diagnostics"];
    let vars: Vec<f64> = d["component_variance"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    let kurts: Vec<f64> = d["component_kurtosis"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    let corr = d["max_offdiag_correlation"].as_f64().unwrap();

    let var_ok = vars.iter().all(|&v| (0.30..=0.37).contains(&v));
    let kurt_ok = kurts.iter().all(|&k| (2.7..=3.3).contains(&k));
    let corr_ok = corr <= 0.05;
    report(
        "4",
        var_ok && kurt_ok && corr_ok,
        &format!(
            "CLT at N=2^14: variance {vars:?}, kurtosis {kurts:?}, max |corr| = {corr:.4}"
        ),
    );
}

/// Criterion 5: the no-loop-free-point probability decays in
/// x = N^(beta - alpha) — grid spans one decade in x, log p_hat monotone
/// decreasing and linear-fit r^2 >= 0.9 over the band p_hat in [1e-3, 0.5].
#[test]
fn acceptance_05_z_indicator_decay() {
    let mut cfg = cfg_for(ExperimentKind::ZDecay);
    cfg.n_scale = 1 << 10;
    cfg.alpha = Alpha(0.4);
    cfg.replicas = 100_000;
    cfg.master_seed = 42;
    let run = run_experiment(&cfg).unwrap();
    let points = run.summary["results"]["points"].as_array().unwrap().clone();
    let xs: Vec<f64> = points.iter().map(|p| p["x"].as_f64().unwrap()).collect();
    let ps: Vec<f64> = points.iter().map(|p| p["p_hat"].as_f64().unwrap()).collect();

    let decade_ok = xs.last().unwrap() / xs.first().unwrap() >= 10.0;
    let band: Vec<(f64, f64)> = xs
        .iter()
        .zip(&ps)
        .filter(|&(_, &p)| (1e-3..=0.5).contains(&p))
        .map(|(&x, &p)| (x, p.ln()))
        .collect();
    let monotone_ok = band.windows(2).all(|w| w[1].1 < w[0].1);
    let fit = lerw::estimators::linear_fit(&band).unwrap();
    let fit_ok = fit.r_squared >= 0.9 && fit.slope < 0.0;
    report(
        "5",
        decade_ok && band.len() >= 3 && monotone_ok && fit_ok,
        &format!(
            "z-decay: x spans {:.2}x, {} band points, slope {:.3}, r^2 = {:.4}",
            xs.last().unwrap() / xs.first().unwrap(),
            band.len(),
            fit.slope,
            fit.r_squared
        ),
    );
}

/// Criterion 6: windowed-vs-full contrast at N = 32, 10^4 replicas.
/// At alpha = 2.5 the processes agree: prefix-mismatch frequency <= 0.03 and
/// c_N/d_N in [0.99, 1.01]; the alpha = 0.4 control shows mismatch >= 0.1.
/// (Thresholds frozen from the pilot run; loops wider than N^2.5 before
/// sigma(32) occur in about 2% of replicas on the 4W-point horizon.)
#[test]
fn acceptance_06_compare_lew_contrast() {
    let mut cfg = cfg_for(ExperimentKind::CompareLew);
    cfg.n_scale = 32;
    cfg.alpha = Alpha(2.5);
    cfg.replicas = 10_000;
    cfg.master_seed = 42;
    let agree = run_experiment(&cfg).unwrap();
    let agree_mismatch = agree.summary["results"]["mismatch_frequency"]
        .as_f64()
        .unwrap();
    let ratio = agree.summary["results"]["moment_ratio"].as_f64().unwrap();

    cfg.alpha = Alpha(0.4);
    let control = run_experiment(&cfg).unwrap();
    let control_mismatch = control.summary["results"]["mismatch_frequency"]
        .as_f64()
        .unwrap();

    let ok = agree_mismatch <= 0.03 && (0.99..=1.01).contains(&ratio) && control_mismatch >= 0.1;
    report(
        "6",
        ok,
        &format!(
            "compare-lew: mismatch(a=2.5) = {agree_mismatch:.4} <= 0.03, c/d = {ratio:.5}, \
             control mismatch(a=0.4) = {control_mismatch:.4} >= 0.1"
        ),
    );
}

/// Criterion 7: zeta estimator stability — zeta_hat in [0.2, 0.4] with a 95%
/// bootstrap CI of width <= 0.1, and two disjoint-seed runs agreeing within
/// each other's CI.
#[test]
fn acceptance_07_zeta_stability() {
    let mut estimates = Vec::new();
    for seed in [42u64, 777] {
        let mut cfg = cfg_for(ExperimentKind::Zeta);
        cfg.replicas = 100_000;
        cfg.master_seed = seed;
        let run = run_experiment(&cfg).unwrap();
        let z = run.summary["results"]["zeta_hat"].as_f64().unwrap();
        let ci = run.summary["results"]["ci"].as_array().unwrap();
        let (lo, hi) = (ci[0].as_f64().unwrap(), ci[1].as_f64().unwrap());
        estimates.push((z, lo, hi));
    }
    let range_ok = estimates.iter().all(|&(z, _, _)| (0.2..=0.4).contains(&z));
    let width_ok = estimates.iter().all(|&(_, lo, hi)| hi - lo <= 0.1);
    let agree_ok = {
        let (z0, lo0, hi0) = estimates[0];
        let (z1, lo1, hi1) = estimates[1];
        z0 >= lo1 && z0 <= hi1 && z1 >= lo0 && z1 <= hi0
    };
    report(
        "7",
        range_ok && width_ok && agree_ok,
        &format!(
            "zeta runs: {:.4} in [{:.4}, {:.4}] and {:.4} in [{:.4}, {:.4}], mutually covered",
            estimates[0].0,
            estimates[0].1,
            estimates[0].2,
            estimates[1].0,
            estimates[1].1,
            estimates[1].2
        ),
    );
}

/// Criterion 8: W = 1 analytic fixed points, exact — survival identically 1,
/// every rho-ratio sample exactly (N+1)/N, and the CLT statistic reducing to
/// the plain SRW endpoint (same stream, same point).
#[test]
fn acceptance_08_w1_fixed_points() {
    let n: u64 = 64;

    let mut cfg = cfg_for(ExperimentKind::Survival);
    cfg.n_scale = n;
    cfg.alpha = Alpha(0.0);
    cfg.replicas = 500;
    let curve = estimate_survival(&cfg).unwrap();
    let survival_ok = curve.entries.iter().all(|e| e.a_hat == 1.0);

    cfg.experiment = ExperimentKind::RhoRatio;
    let ratio = rho_ratio_experiment(&cfg, &curve).unwrap();
    let expected = (n as f64 + 1.0) / n as f64;
    let ratio_ok = ratio.ratios.samples.iter().all(|&s| s == expected);

    cfg.experiment = ExperimentKind::Clt;
    cfg.replicas = 100;
    let run = run_experiment(&cfg).unwrap();
    let table = run.tables.iter().find(|t| t.name == "clt").unwrap();
    let mut clt_ok = !table.rows.is_empty();
    for row in &table.rows {
        let stream: u64 = row[0].parse().unwrap();
        let sigma_n: usize = row[1].parse().unwrap();
        let f_n: usize = row[2].parse().unwrap();
        clt_ok &= sigma_n == n as usize && f_n == n as usize;
        // same stream replayed gives the same plain-SRW endpoint
        let mut rng = derive_stream(cfg.master_seed, stream);
        let path = generate_walk(&mut rng, n as usize, 3);
        let coords: Vec<String> = path
            .point(n as usize)
            .coords()
            .iter()
            .map(|c| c.to_string())
            .collect();
        clt_ok &= row[3..] == coords[..];
    }

    report(
        "8",
        survival_ok && ratio_ok && clt_ok,
        &format!(
            "W=1: survival == 1 exactly, rho-ratio samples == {expected} exactly, \
             CLT statistic == plain SRW endpoint"
        ),
    );
}

/// Criterion 9: byte-identical CSV outputs for workers in {1, 2, 8} at equal
/// config and seed; summary.json identical except wall time.
#[test]
fn acceptance_09_worker_determinism() {
    let outputs: Vec<_> = [1usize, 2, 8]
        .iter()
        .map(|&workers| {
            let mut cfg = cfg_for(ExperimentKind::RhoRatio);
            cfg.n_scale = 256;
            cfg.alpha = Alpha(0.4);
            cfg.replicas = 300;
            cfg.master_seed = 42;
            cfg.workers = workers;
            let run = run_experiment(&cfg).unwrap();
            let csvs: Vec<(String, String)> = run
                .tables
                .iter()
                .map(|t| (t.name.clone(), t.to_csv_string()))
                .collect();
            let mut summary = run.summary.clone();
            summary["manifest"]
                .as_object_mut()
                .unwrap()
                .remove("wall_time_secs");
            // worker count is allowed to differ in the config echo
            summary["manifest"]["config"]
                .as_object_mut()
                .unwrap()
                .remove("workers");
            (csvs, summary)
        })
        .collect();

    let csv_ok = outputs.iter().all(|(csvs, _)| *csvs == outputs[0].0);
    let json_ok = outputs.iter().all(|(_, s)| *s == outputs[0].1);
    report(
        "9",
        csv_ok && json_ok,
        "workers in {1, 2, 8} produce byte-identical CSV tables and summaries",
    );
}
