//! Least-squares exponent fitting on log-log (power laws) and lin-log
//! (exponential decays) scales.

use serde::Serialize;

use crate::error::{Error, Result};

/// A fitted power law `y ~ amplitude * x^(-exponent)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub amplitude: f64,
    /// Standard error of the exponent, from the log-scale residuals.
    pub stderr: f64,
    pub r_squared: f64,
    pub fit_range: (f64, f64),
}

/// Ordinary least squares `y = slope * x + intercept`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
    pub r_squared: f64,
}

/// Fit `log y` against `log x` over the points with `x` inside `range`
/// (inclusive); the power-law exponent is minus the fitted slope.
///
/// Rejects non-positive coordinates and ranges holding fewer than 3 points.
pub fn fit_power_law(points: &[(f64, f64)], range: (f64, f64)) -> Result<PowerLawFit> {
    let selected: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(x, _)| x >= range.0 && x <= range.1)
        .collect();
    if selected.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "power-law fit needs >= 3 points in range, found {}",
            selected.len()
        )));
    }
    if selected.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return Err(Error::invalid(
            "points",
            "power-law fit requires strictly positive coordinates",
        ));
    }
    let logs: Vec<(f64, f64)> = selected.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let lin = linear_fit(&logs)?;
    let my = logs.iter().map(|&(_, y)| y).sum::<f64>() / logs.len() as f64;
    let mx = logs.iter().map(|&(x, _)| x).sum::<f64>() / logs.len() as f64;
    let amplitude = (my - lin.slope * mx).exp();
    Ok(PowerLawFit {
        exponent: -lin.slope,
        amplitude,
        stderr: lin.slope_stderr,
        r_squared: lin.r_squared,
        fit_range: range,
    })
}

/// Plain least-squares line through `points`; errors when fewer than 3
/// points or when all abscissae coincide.
pub fn linear_fit(points: &[(f64, f64)]) -> Result<LinearFit> {
    let m = points.len();
    if m < 3 {
        return Err(Error::InsufficientData(format!(
            "linear fit needs >= 3 points, found {m}"
        )));
    }
    let mx = points.iter().map(|&(x, _)| x).sum::<f64>() / m as f64;
    let my = points.iter().map(|&(_, y)| y).sum::<f64>() / m as f64;
    let sxx: f64 = points.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    let sxy: f64 = points.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Degenerate(
            "all abscissae coincide; slope undefined".to_string(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = points
        .iter()
        .map(|&(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    let ss_tot: f64 = points.iter().map(|&(_, y)| (y - my) * (y - my)).sum();
    // ordinates constant up to rounding noise are fit perfectly by the
    // horizontal line
    let y_scale = points.iter().map(|&(_, y)| y.abs()).fold(1.0, f64::max);
    let r_squared = if ss_tot <= m as f64 * (f64::EPSILON * y_scale).powi(2) {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    let slope_stderr = (ss_res / (m - 2) as f64 / sxx).sqrt();
    Ok(LinearFit {
        slope,
        intercept,
        slope_stderr,
        r_squared,
    })
}
