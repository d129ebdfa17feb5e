//! Shared helpers for unit tests.

use crate::config::{parse_config, CliOverrides, ExperimentConfig, ExperimentKind};

/// A small validated config for the given experiment; tests override fields
/// directly afterwards.
pub(crate) fn test_cfg(kind: ExperimentKind) -> ExperimentConfig {
    let cli = CliOverrides {
        experiment: Some(kind),
        workers: Some(2),
        ..CliOverrides::default()
    };
    parse_config(None, &cli).unwrap()
}
