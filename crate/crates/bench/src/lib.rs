//! Shared fixtures for the criterion benches.

use signet_core::graph_models::{sample_er, GraphSample};

pub fn fixture_graph(n: usize, p: f64) -> GraphSample {
    sample_er(n, p, 0xb3ac4).expect("valid benchmark fixture")
}
