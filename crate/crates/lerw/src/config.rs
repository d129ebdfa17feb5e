//! Experiment configuration: file/flag parsing, precedence, validation, and
//! the derived per-experiment quantities (grids, path lengths, stream
//! namespaces, resource budgets).

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::erasure::window_length;
use crate::error::{Error, Result};

/// The memory exponent. `Alpha(f64::INFINITY)` (written `inf`) selects full
/// loop erasure; `0` degenerates to the plain walk.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Alpha(pub f64);

impl Alpha {
    pub const INF: Alpha = Alpha(f64::INFINITY);

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
}

#[derive(Debug, Error)]
#[error("alpha must be a non-negative real or `inf`, got `{0}`")]
pub struct ParseAlphaError(String);

impl FromStr for Alpha {
    type Err = ParseAlphaError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "Inf" | "INF" => Ok(Alpha::INF),
            other => other
                .parse::<f64>()
                .map(Alpha)
                .map_err(|_| ParseAlphaError(s.to_string())),
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct AlphaVisitor;

        impl serde::de::Visitor<'_> for AlphaVisitor {
            type Value = Alpha;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a non-negative number or the string \"inf\"")
            }

            fn visit_f64<E: serde::de::Error>(self, v: f64) -> std::result::Result<Alpha, E> {
                Ok(Alpha(v))
            }

            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<Alpha, E> {
                Ok(Alpha(v as f64))
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<Alpha, E> {
                Ok(Alpha(v as f64))
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<Alpha, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(AlphaVisitor)
    }
}

/// One experiment per claim the artifact checks, plus two raw-dump utilities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// Survival curve a_hat(n): probability that index n survives erasure.
    Survival,
    /// Concentration of rho(N) / (N * a_hat(N)) around 1.
    RhoRatio,
    /// Concentration of sigma(N) * a_hat(sigma(N)) / N around 1.
    SigmaScaling,
    /// Gaussian diagnostics for S_{F_N} / sqrt(N).
    Clt,
    /// Gaussian diagnostics for S_{sigma(N)} * sqrt(tau_N) / sqrt(N).
    TauClt,
    /// Windowed-vs-full erasure comparison on common paths.
    CompareLew,
    /// Two-walk non-intersection exponent.
    Zeta,
    /// Decay of the no-loop-free-point indicator.
    ZDecay,
    /// Dump one raw walk.
    Walk,
    /// Dump one erasure trace.
    Erase,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Survival => "survival",
            ExperimentKind::RhoRatio => "rho-ratio",
            ExperimentKind::SigmaScaling => "sigma-scaling",
            ExperimentKind::Clt => "clt",
            ExperimentKind::TauClt => "tau-clt",
            ExperimentKind::CompareLew => "compare-lew",
            ExperimentKind::Zeta => "zeta",
            ExperimentKind::ZDecay => "z-decay",
            ExperimentKind::Walk => "walk",
            ExperimentKind::Erase => "erase",
        }
    }

    /// Experiments whose semantics require a finite window.
    fn requires_finite_alpha(self) -> bool {
        matches!(
            self,
            ExperimentKind::Survival
                | ExperimentKind::RhoRatio
                | ExperimentKind::SigmaScaling
                | ExperimentKind::Clt
                | ExperimentKind::TauClt
                | ExperimentKind::ZDecay
        )
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "survival" => Ok(ExperimentKind::Survival),
            "rho-ratio" => Ok(ExperimentKind::RhoRatio),
            "sigma-scaling" => Ok(ExperimentKind::SigmaScaling),
            "clt" => Ok(ExperimentKind::Clt),
            "tau-clt" => Ok(ExperimentKind::TauClt),
            "compare-lew" => Ok(ExperimentKind::CompareLew),
            "zeta" => Ok(ExperimentKind::Zeta),
            "z-decay" => Ok(ExperimentKind::ZDecay),
            "walk" => Ok(ExperimentKind::Walk),
            "erase" => Ok(ExperimentKind::Erase),
            other => Err(format!("unknown experiment `{other}`")),
        }
    }
}

/// Configuration errors carry the offending key so the CLI message points at
/// the exact setting.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(String),

    #[error("invalid value for `{key}`: {reason}")]
    Invalid { key: String, reason: String },

    #[error("missing required setting `{key}`")]
    Missing { key: String },
}

impl ConfigError {
    fn invalid(key: &str, reason: impl Into<String>) -> Self {
        ConfigError::Invalid {
            key: key.to_string(),
            reason: reason.into(),
        }
    }
}

/// A fully validated experiment campaign. `(config, master_seed)` determines
/// every data output byte-for-byte, independent of `workers`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    /// The scaling parameter N.
    #[serde(rename = "N")]
    pub n_scale: u64,
    pub alpha: Alpha,
    pub dim: usize,
    pub replicas: u64,
    pub master_seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_grid: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_grid: Option<Vec<f64>>,
    pub margin_factor: f64,
    pub workers: usize,
    #[serde(rename = "out", skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta_hat: Option<f64>,
    /// Optional explicit path length (points) overriding the per-experiment
    /// heuristics.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path_len: Option<usize>,
    pub max_walk_points: usize,
    pub memory_budget_mb: u64,
}

/// Optional settings as they appear in a TOML config file. Unknown keys are
/// rejected with the key name in the error.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub experiment: Option<ExperimentKind>,
    #[serde(rename = "N")]
    pub n_scale: Option<u64>,
    pub alpha: Option<Alpha>,
    pub dim: Option<usize>,
    pub replicas: Option<u64>,
    #[serde(alias = "seed")]
    pub master_seed: Option<u64>,
    pub n_grid: Option<Vec<u64>>,
    pub beta_grid: Option<Vec<f64>>,
    #[serde(alias = "margin")]
    pub margin_factor: Option<f64>,
    pub workers: Option<usize>,
    #[serde(rename = "out")]
    pub out_dir: Option<PathBuf>,
    pub zeta_hat: Option<f64>,
    pub path_len: Option<usize>,
    pub max_walk_points: Option<usize>,
    pub memory_budget_mb: Option<u64>,
}

/// Command-line overrides; every set value wins over the config file.
#[derive(Debug, Default, Clone)]
pub struct CliOverrides {
    pub experiment: Option<ExperimentKind>,
    pub n_scale: Option<u64>,
    pub alpha: Option<Alpha>,
    pub dim: Option<usize>,
    pub replicas: Option<u64>,
    pub master_seed: Option<u64>,
    pub n_grid: Option<Vec<u64>>,
    pub beta_grid: Option<Vec<f64>>,
    pub margin_factor: Option<f64>,
    pub workers: Option<usize>,
    pub out_dir: Option<PathBuf>,
    pub zeta_hat: Option<f64>,
    pub path_len: Option<usize>,
    pub max_walk_points: Option<usize>,
    pub memory_budget_mb: Option<u64>,
}

pub const DEFAULT_N: u64 = 1024;
pub const DEFAULT_ALPHA: f64 = 0.4;
pub const DEFAULT_DIM: usize = 3;
pub const DEFAULT_REPLICAS: u64 = 1000;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_MARGIN: f64 = 1.0;
pub const DEFAULT_MAX_WALK_POINTS: usize = 1 << 26;
pub const DEFAULT_MEMORY_BUDGET_MB: u64 = 4096;

fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Merge a config document and CLI flags (flags win), fill defaults, and
/// validate every field.
pub fn parse_config(
    file_text: Option<&str>,
    cli: &CliOverrides,
) -> std::result::Result<ExperimentConfig, ConfigError> {
    let file: FileConfig = match file_text {
        Some(text) => toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?,
        None => FileConfig::default(),
    };

    let experiment = cli
        .experiment
        .or(file.experiment)
        .ok_or_else(|| ConfigError::Missing {
            key: "experiment".to_string(),
        })?;

    let cfg = ExperimentConfig {
        experiment,
        n_scale: cli.n_scale.or(file.n_scale).unwrap_or(DEFAULT_N),
        alpha: cli.alpha.or(file.alpha).unwrap_or(Alpha(DEFAULT_ALPHA)),
        dim: cli.dim.or(file.dim).unwrap_or(DEFAULT_DIM),
        replicas: cli.replicas.or(file.replicas).unwrap_or(DEFAULT_REPLICAS),
        master_seed: cli.master_seed.or(file.master_seed).unwrap_or(DEFAULT_SEED),
        n_grid: cli.n_grid.clone().or(file.n_grid),
        beta_grid: cli.beta_grid.clone().or(file.beta_grid),
        margin_factor: cli
            .margin_factor
            .or(file.margin_factor)
            .unwrap_or(DEFAULT_MARGIN),
        workers: cli.workers.or(file.workers).unwrap_or_else(default_workers),
        out_dir: cli.out_dir.clone().or(file.out_dir),
        zeta_hat: cli.zeta_hat.or(file.zeta_hat),
        path_len: cli.path_len.or(file.path_len),
        max_walk_points: cli
            .max_walk_points
            .or(file.max_walk_points)
            .unwrap_or(DEFAULT_MAX_WALK_POINTS),
        memory_budget_mb: cli
            .memory_budget_mb
            .or(file.memory_budget_mb)
            .unwrap_or(DEFAULT_MEMORY_BUDGET_MB),
    };
    cfg.validate()?;
    Ok(cfg)
}

impl ExperimentConfig {
    pub fn validate(&self) -> std::result::Result<(), ConfigError> {
        if self.n_scale == 0 {
            return Err(ConfigError::invalid("N", "must be >= 1"));
        }
        let a = self.alpha.0;
        if a.is_nan() || a < 0.0 {
            return Err(ConfigError::invalid(
                "alpha",
                format!("must be a non-negative real or `inf`, got {}", self.alpha),
            ));
        }
        if self.alpha.is_infinite() && self.experiment.requires_finite_alpha() {
            return Err(ConfigError::invalid(
                "alpha",
                format!(
                    "`inf` is not valid for the {} experiment (its path-margin rule needs a finite window)",
                    self.experiment
                ),
            ));
        }
        if self.dim == 0 {
            return Err(ConfigError::invalid("dim", "must be >= 1"));
        }
        if self.replicas == 0 {
            return Err(ConfigError::invalid("replicas", "must be >= 1"));
        }
        if !self.margin_factor.is_finite() || self.margin_factor < 0.0 {
            return Err(ConfigError::invalid(
                "margin_factor",
                "must be a non-negative finite real",
            ));
        }
        if self.workers == 0 {
            return Err(ConfigError::invalid("workers", "must be >= 1"));
        }
        if let Some(z) = self.zeta_hat {
            if !z.is_finite() || z <= 0.0 {
                return Err(ConfigError::invalid("zeta_hat", "must be a positive real"));
            }
        }
        if let Some(grid) = &self.n_grid {
            if grid.is_empty() {
                return Err(ConfigError::invalid("n_grid", "must be nonempty"));
            }
            if grid.windows(2).any(|w| w[0] >= w[1]) {
                return Err(ConfigError::invalid("n_grid", "must be strictly increasing"));
            }
        }
        if let Some(grid) = &self.beta_grid {
            if grid.is_empty() {
                return Err(ConfigError::invalid("beta_grid", "must be nonempty"));
            }
            if grid.iter().any(|b| !b.is_finite()) {
                return Err(ConfigError::invalid("beta_grid", "entries must be finite"));
            }
            if grid.windows(2).any(|w| w[0] >= w[1]) {
                return Err(ConfigError::invalid(
                    "beta_grid",
                    "must be strictly increasing",
                ));
            }
        }
        if let Some(l) = self.path_len {
            if l < 2 {
                return Err(ConfigError::invalid("path_len", "must be >= 2 points"));
            }
        }
        if self.max_walk_points < 2 {
            return Err(ConfigError::invalid("max_walk_points", "must be >= 2"));
        }
        if self.memory_budget_mb == 0 {
            return Err(ConfigError::invalid("memory_budget_mb", "must be >= 1"));
        }
        Ok(())
    }

    /// `floor(N^alpha)` without any path clamp, or `None` for `alpha = inf`.
    pub fn raw_window(&self) -> Result<Option<usize>> {
        if self.alpha.is_infinite() {
            return Ok(None);
        }
        window_length(self.n_scale, self.alpha.0, usize::MAX).map(Some)
    }

    /// Extra points generated beyond the observed range: `ceil(margin * W)`.
    pub fn margin_points(&self, window: usize) -> usize {
        (self.margin_factor * window as f64).ceil() as usize
    }

    /// Survival grid: powers of two up to N (plus 0 and N itself).
    pub fn survival_grid(&self) -> Vec<u64> {
        if let Some(grid) = &self.n_grid {
            return grid.clone();
        }
        let mut grid = vec![0u64, 1];
        let mut v = 2u64;
        while v < self.n_scale {
            grid.push(v);
            v *= 2;
        }
        grid.push(self.n_scale);
        grid.dedup();
        grid
    }

    /// Grid for the two-walk intersection experiment: 2^6 .. 2^12.
    pub fn zeta_grid(&self) -> Vec<u64> {
        self.n_grid
            .clone()
            .unwrap_or_else(|| (6..=12).map(|e| 1u64 << e).collect())
    }

    /// Default beta grid for the loop-free-gap decay experiment: eight
    /// exponents above alpha spanning `beta - alpha` in [0.02, 0.36], so that
    /// `N^(beta - alpha)` covers slightly over one decade at N = 2^10.
    pub fn z_decay_grid(&self) -> Vec<f64> {
        if let Some(grid) = &self.beta_grid {
            return grid.clone();
        }
        let a = self.alpha.0;
        (0..8).map(|i| a + 0.02 + 0.34 * i as f64 / 7.0).collect()
    }

    /// Path length (points) for experiments that must realize sigma(N):
    /// a cushioned power-law guess for the N-th jump time, plus margin.
    /// Replicas that outrun it are censored and counted.
    pub fn sigma_path_points(&self, window: usize) -> usize {
        if let Some(l) = self.path_len {
            return l;
        }
        let n = self.n_scale as f64;
        let q_guess = (0.3 * self.alpha.0).min(0.5);
        let grown = (1.5 * n.powf(1.0 / (1.0 - q_guess))).ceil() as usize;
        let base = grown.max(4 * self.n_scale as usize).max(4 * window);
        base + self.margin_points(window) + 1
    }

    /// Path length (points) for the windowed-vs-full comparison. Long enough
    /// to realize N erased points in both processes and to leave room for
    /// loops wider than the window.
    pub fn compare_path_points(&self, raw_window: Option<usize>) -> usize {
        if let Some(l) = self.path_len {
            return l;
        }
        let base = (64 * self.n_scale as usize).max(4096);
        match raw_window {
            Some(w) => base.max(w.saturating_mul(4)),
            None => base,
        }
    }

    /// Refuse up front when a run would exceed the walk cap or the memory
    /// budget (paths live per worker; samples live per replica).
    pub fn ensure_path_budget(&self, path_points: usize) -> Result<()> {
        if path_points > self.max_walk_points {
            return Err(Error::ResourceLimit(format!(
                "path of {path_points} points exceeds max_walk_points = {}",
                self.max_walk_points
            )));
        }
        const BYTES_PER_POINT: u64 = 200;
        const BYTES_PER_REPLICA: u64 = 64;
        let peak = path_points as u64 * BYTES_PER_POINT * self.workers as u64
            + self.replicas * BYTES_PER_REPLICA;
        let budget = self.memory_budget_mb * 1024 * 1024;
        if peak > budget {
            return Err(Error::ResourceLimit(format!(
                "estimated peak memory {peak} bytes exceeds budget {budget} bytes \
                 (path_points = {path_points}, workers = {})",
                self.workers
            )));
        }
        Ok(())
    }

    // Stream namespaces: curve-estimation replicas and experiment replicas
    // never share a stream, so plug-in normalizations stay independent of
    // the samples they normalize.

    pub fn curve_stream_index(&self, replica: u64) -> u64 {
        replica
    }

    pub fn experiment_stream_index(&self, replica: u64) -> u64 {
        self.replicas + replica
    }

    pub fn bootstrap_stream_index(&self) -> u64 {
        2 * self.replicas
    }
}
