//! Offset calibration against fresh-seed re-measurement.

use hypercover::generator::{calibrate_offset, generate, GeneratorConfig};
use hypercover::geometry::ModelParams;

fn mean_degree(n: usize, alpha: f64, c: f64, seeds: &[u64]) -> f64 {
    let params = ModelParams::new(n, alpha, c).unwrap();
    seeds
        .iter()
        .map(|&s| generate(&GeneratorConfig::new(params, s)).average_degree())
        .sum::<f64>()
        / seeds.len() as f64
}

#[test]
fn calibrated_offset_reproduces_target_on_fresh_seeds() {
    // The regime of a medium scale-free disk: about 1.9k vertices,
    // average degree 7.7, tail exponent 2.6.
    let c = calibrate_offset(7.7, 1942, 0.8, &[11, 12, 13, 14, 15, 16]).unwrap();
    let fresh = mean_degree(1942, 0.8, c, &[101, 102, 103, 104, 105]);
    assert!(
        (fresh - 7.7).abs() / 7.7 < 0.10,
        "fresh-seed degree {fresh} not within 10% of 7.7 (C = {c})"
    );
}

#[test]
fn calibrated_offset_hits_sparse_target() {
    let c = calibrate_offset(2.0, 10_000, 0.75, &[11, 12, 13, 14, 15, 16]).unwrap();
    let fresh = mean_degree(10_000, 0.75, c, &(101..=110).collect::<Vec<_>>());
    assert!(
        (fresh - 2.0).abs() / 2.0 < 0.10,
        "fresh-seed degree {fresh} not within 10% of 2 (C = {c})"
    );
}

#[test]
fn average_degree_is_monotone_decreasing_in_offset() {
    // Measured direction: pushing the offset up moves vertices outward
    // faster than it widens the threshold, so graphs get sparser.
    let seeds = [1u64, 2, 3];
    let d = [
        mean_degree(2_000, 0.75, -2.0, &seeds),
        mean_degree(2_000, 0.75, 0.0, &seeds),
        mean_degree(2_000, 0.75, 2.0, &seeds),
    ];
    assert!(
        d[0] > d[1] && d[1] > d[2],
        "degrees not decreasing in C: {d:?}"
    );
}
