//! Windowed-vs-full loop erasure on common paths.
//!
//! Both procedures run on the same walk (common random numbers) and are
//! compared two ways: pathwise, through the frequency of replicas whose first
//! `N` erased points differ, and distributionally, through the ratio of the
//! root-mean-square endpoint norms `c_N / d_N`. For windows wider than every
//! loop the walk can close, both checks degenerate to equality.

use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::erasure::{erase_full, erase_windowed};
use crate::error::{Error, Result};
use crate::estimators::Censoring;
use crate::rng::derive_stream;
use crate::stats::{moment_report, MomentReport};
use crate::walk::{generate_walk, LatticePoint};
use rayon::prelude::*;

#[derive(Clone, Debug, Serialize)]
pub struct CompareRow {
    pub stream_index: u64,
    pub sigma_windowed: usize,
    pub sigma_full: usize,
    /// True when the first N erased points of the two traces differ.
    pub mismatch: bool,
    #[serde(skip)]
    pub windowed_endpoint: LatticePoint,
    #[serde(skip)]
    pub full_endpoint: LatticePoint,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub windowed_moments: MomentReport,
    pub full_moments: MomentReport,
    /// Root-mean-square endpoint norm of the windowed process.
    pub c_n: f64,
    /// Root-mean-square endpoint norm of the full process.
    pub d_n: f64,
    pub moment_ratio: f64,
    pub mismatch_frequency: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareOutput {
    pub report: CompareReport,
    #[serde(skip)]
    pub rows: Vec<CompareRow>,
    pub censoring: Censoring,
}

/// Per replica: erase the same path with the configured window and with the
/// full window, compare the first `N` erased points, and collect both
/// `S_{sigma(N)}` endpoints. Replicas where either trace realizes fewer than
/// `N + 1` erased points are censored.
pub fn compare_lew_experiment(cfg: &ExperimentConfig) -> Result<CompareOutput> {
    let n = cfg.n_scale as usize;
    let raw_window = cfg.raw_window()?;
    let path_points = cfg.compare_path_points(raw_window);
    cfg.ensure_path_budget(path_points)?;

    let per_replica: Vec<Option<CompareRow>> = (0..cfg.replicas)
        .into_par_iter()
        .map(|k| {
            let stream_index = cfg.experiment_stream_index(k);
            let mut rng = derive_stream(cfg.master_seed, stream_index);
            let path = generate_walk(&mut rng, path_points - 1, cfg.dim);
            let window = raw_window.unwrap_or(path.len()).min(path.len());
            let windowed = erase_windowed(path.points(), window);
            let full = erase_full(path.points());
            if windowed.num_jumps() <= n || full.num_jumps() <= n {
                return None;
            }
            let mismatch = windowed.erased_path[..n] != full.erased_path[..n];
            Some(CompareRow {
                stream_index,
                sigma_windowed: windowed.sigma[n],
                sigma_full: full.sigma[n],
                mismatch,
                windowed_endpoint: windowed.erased_path[n].clone(),
                full_endpoint: full.erased_path[n].clone(),
            })
        })
        .collect();

    let censored = per_replica.iter().filter(|r| r.is_none()).count() as u64;
    let rows: Vec<CompareRow> = per_replica.into_iter().flatten().collect();
    if rows.len() < 2 {
        return Err(Error::Degenerate(format!(
            "only {} replicas realized {n} erased points in both processes",
            rows.len()
        )));
    }

    let flat = |pick: fn(&CompareRow) -> &LatticePoint| -> Vec<f64> {
        rows.iter()
            .flat_map(|r| pick(r).coords().iter().map(|&c| c as f64))
            .collect()
    };
    let windowed_moments = moment_report(&flat(|r| &r.windowed_endpoint), cfg.dim)?;
    let full_moments = moment_report(&flat(|r| &r.full_endpoint), cfg.dim)?;
    let c_n = windowed_moments.radial_second_moment.sqrt();
    let d_n = full_moments.radial_second_moment.sqrt();
    let mismatches = rows.iter().filter(|r| r.mismatch).count();

    Ok(CompareOutput {
        report: CompareReport {
            windowed_moments,
            full_moments,
            c_n,
            d_n,
            moment_ratio: c_n / d_n,
            mismatch_frequency: mismatches as f64 / rows.len() as f64,
        },
        rows,
        censoring: Censoring {
            total: cfg.replicas,
            censored,
        },
    })
}
