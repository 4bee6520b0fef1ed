//! Spectral hypothesis tests distinguishing an Erdos-Renyi graph from a
//! symmetric stochastic block model, built on linear spectral statistics of
//! rescaled Chebyshev polynomials of centered adjacency matrices, with
//! brute-force signed-cycle oracles and a seeded Monte Carlo harness.

pub mod combinatorics;
pub mod cycle_oracle;
pub mod error;
pub mod graph_models;
pub mod harness;
pub mod rng;
pub mod spectral;
pub mod statistics;

pub use error::{Result, SignetError};
pub use graph_models::{GraphSample, ModelParams, SnrSummary};
pub use spectral::{CenteredMatrix, Centering, Regime, Spectrum};
pub use statistics::{SigmaMatrix, SignMode};

/// Library version stamped into result rows.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
