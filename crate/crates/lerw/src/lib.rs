//! Monte Carlo laboratory for the finite-memory loop-erased random walk on `Z^d`.
//!
//! A simple random walk erased of all loops whose index span stays below a
//! window `W = floor(N^alpha)` interpolates between the plain walk (`alpha = 0`)
//! and the classical loop-erased walk (`alpha = inf`). This crate implements
//! the windowed erasure procedure exactly, plus the Monte Carlo estimators and
//! distributional diagnostics used to study it: survival probabilities,
//! jump-time scaling, CLT normalizations, windowed-vs-full comparisons, the
//! two-walk intersection exponent, and loop-free-gap decay.
//!
//! The `lerw` binary drives everything from the command line and writes
//! CSV tables plus a JSON summary per run; see the README for the experiment
//! catalogue.

pub mod config;
pub mod erasure;
pub mod error;
pub mod estimators;
pub mod output;
pub mod rng;
pub mod runner;
pub mod stats;
pub mod walk;

#[cfg(test)]
pub(crate) mod test_support;

pub use config::{Alpha, ExperimentConfig, ExperimentKind};
pub use erasure::{
    erase_full, erase_windowed, erase_windowed_naive, loop_free_mask, window_length, z_indicator,
    ErasureTrace, WindowSpec,
};
pub use error::{Error, Result};
pub use rng::{derive_stream, RngStream};
pub use walk::{generate_walk, sample_step, LatticePoint, WalkPath};
