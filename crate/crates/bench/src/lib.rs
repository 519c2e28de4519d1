//! Shared fixtures for the benchmark suite.

use hypercover::generator::{generate, GeneratorConfig};
use hypercover::geometry::ModelParams;
use hypercover::graph::Graph;

/// A reproducible disk-model graph for the benches.
pub fn fixture(n: usize, c: f64, seed: u64) -> Graph {
    let params = ModelParams::new(n, 0.75, c).unwrap();
    generate(&GeneratorConfig::new(params, seed))
}
