//! Percentile bootstrap intervals, driven by a dedicated deterministic
//! stream.

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Named statistics accepted by [`bootstrap_ci`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistic {
    Mean,
    StdDev,
    Median,
}

impl Statistic {
    fn evaluate(self, samples: &[f64]) -> f64 {
        match self {
            Statistic::Mean => samples.iter().sum::<f64>() / samples.len() as f64,
            Statistic::StdDev => {
                let mean = samples.iter().sum::<f64>() / samples.len() as f64;
                let ss: f64 = samples.iter().map(|x| (x - mean) * (x - mean)).sum();
                (ss / (samples.len() as f64 - 1.0).max(1.0)).sqrt()
            }
            Statistic::Median => {
                let mut sorted = samples.to_vec();
                sorted.sort_by(f64::total_cmp);
                let mid = sorted.len() / 2;
                if sorted.len() % 2 == 0 {
                    0.5 * (sorted[mid - 1] + sorted[mid])
                } else {
                    sorted[mid]
                }
            }
        }
    }
}

/// Percentile bootstrap interval for a named statistic.
pub fn bootstrap_ci(
    samples: &[f64],
    statistic: Statistic,
    b: usize,
    level: f64,
    rng: &mut RngStream,
) -> Result<(f64, f64)> {
    bootstrap_ci_with(samples, |s| statistic.evaluate(s), b, level, rng)
}

/// Percentile bootstrap interval for an arbitrary statistic. Replications
/// that evaluate to NaN are dropped; more than 1% of them is an error.
pub fn bootstrap_ci_with<F>(
    samples: &[f64],
    stat_fn: F,
    b: usize,
    level: f64,
    rng: &mut RngStream,
) -> Result<(f64, f64)>
where
    F: Fn(&[f64]) -> f64,
{
    if samples.is_empty() {
        return Err(Error::InsufficientData(
            "bootstrap needs a nonempty sample".to_string(),
        ));
    }
    if b < 100 {
        return Err(Error::invalid("B", "bootstrap needs B >= 100 replications"));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::invalid("level", "confidence level must lie in (0, 1)"));
    }
    let n = samples.len();
    let mut stats = Vec::with_capacity(b);
    let mut resampled = vec![0.0; n];
    for _ in 0..b {
        for slot in resampled.iter_mut() {
            *slot = samples[rng.gen_range(0..n)];
        }
        let v = stat_fn(&resampled);
        if !v.is_nan() {
            stats.push(v);
        }
    }
    if stats.len() < b - b / 100 {
        return Err(Error::Degenerate(format!(
            "{} of {b} bootstrap replications were undefined",
            b - stats.len()
        )));
    }
    stats.sort_by(f64::total_cmp);
    let q_lo = (1.0 - level) / 2.0;
    let q_hi = 1.0 - q_lo;
    let pick = |q: f64| {
        let idx = (q * (stats.len() - 1) as f64).round() as usize;
        stats[idx]
    };
    Ok((pick(q_lo), pick(q_hi)))
}
