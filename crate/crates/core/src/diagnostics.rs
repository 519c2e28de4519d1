//! Empirical measurements of how a generated graph populates the disk
//! discretization, next to their closed-form predictors.
//!
//! The outer band (radius at least the threshold `rho`) is cut into
//! angular sectors; maximal circular blocks of nonempty sectors form
//! runs. Runs longer than `w` sectors are wide, the rest are narrow, and
//! a narrow run is large when it holds more vertices than the component
//! limit. The number of vertices in the inner disk, in wide runs, and in
//! large narrow runs are the quantities the approximation analysis
//! bounds, so the report puts each next to its leading-order predictor as
//! a plain ratio; the big-O constants are unknown, so no pass/fail
//! judgment is attached.

use thiserror::Error;

use crate::geometry::{self, analysis_constants, angular_distance, AnalysisConstants, ModelParams};
use crate::graph::Graph;

#[derive(Debug, Error)]
pub enum DiagnosticsError {
    #[error("diagnostics require per-vertex coordinates, but the graph has none")]
    MissingCoordinates,
    #[error("argument {name} = {value} outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error(transparent)]
    Geometry(#[from] geometry::GeometryError),
}

/// Per-sector vertex counts over the outer band.
#[derive(Debug, Clone)]
pub struct SectorOccupancy {
    pub constants: AnalysisConstants,
    /// One count per sector; sums to the number of outer-band vertices.
    pub counts: Vec<u32>,
}

impl SectorOccupancy {
    pub fn outer_vertex_count(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    pub fn nonempty_fraction(&self) -> f64 {
        self.counts.iter().filter(|&&c| c > 0).count() as f64 / self.counts.len() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunKind {
    Wide,
    Narrow { large: bool },
}

/// A maximal circular block of nonempty sectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub start: usize,
    pub length: usize,
    pub vertex_count: usize,
    pub kind: RunKind,
}

#[derive(Debug, Clone)]
pub struct RunClassification {
    pub runs: Vec<Run>,
}

impl RunClassification {
    /// Decomposes a circular occupancy pattern into maximal runs. Runs
    /// longer than `w` sectors are wide; narrow runs holding more than
    /// `large_threshold` vertices are flagged large. A fully occupied
    /// circle is a single run starting at sector 0.
    pub fn from_counts(counts: &[u32], w: f64, large_threshold: usize) -> Self {
        let n = counts.len();
        let classify = |length: usize, vertices: usize| {
            if length as f64 > w {
                RunKind::Wide
            } else {
                RunKind::Narrow {
                    large: vertices > large_threshold,
                }
            }
        };
        let mut runs = Vec::new();
        let Some(first_empty) = counts.iter().position(|&c| c == 0) else {
            if n > 0 {
                let vertices = counts.iter().map(|&c| c as usize).sum();
                runs.push(Run {
                    start: 0,
                    length: n,
                    vertex_count: vertices,
                    kind: classify(n, vertices),
                });
            }
            return Self { runs };
        };
        let mut current: Option<(usize, usize, usize)> = None;
        for step in 1..=n {
            let idx = (first_empty + step) % n;
            if counts[idx] > 0 {
                match &mut current {
                    Some((_, length, vertices)) => {
                        *length += 1;
                        *vertices += counts[idx] as usize;
                    }
                    None => current = Some((idx, 1, counts[idx] as usize)),
                }
            } else if let Some((start, length, vertices)) = current.take() {
                runs.push(Run {
                    start,
                    length,
                    vertex_count: vertices,
                    kind: classify(length, vertices),
                });
            }
        }
        if let Some((start, length, vertices)) = current.take() {
            runs.push(Run {
                start,
                length,
                vertex_count: vertices,
                kind: classify(length, vertices),
            });
        }
        runs.sort_unstable_by_key(|r| r.start);
        Self { runs }
    }

    pub fn wide_vertices(&self) -> usize {
        self.runs
            .iter()
            .filter(|r| r.kind == RunKind::Wide)
            .map(|r| r.vertex_count)
            .sum()
    }

    pub fn narrow_vertices(&self) -> usize {
        self.runs
            .iter()
            .filter(|r| matches!(r.kind, RunKind::Narrow { .. }))
            .map(|r| r.vertex_count)
            .sum()
    }

    pub fn large_narrow_vertices(&self) -> usize {
        self.runs
            .iter()
            .filter(|r| r.kind == RunKind::Narrow { large: true })
            .map(|r| r.vertex_count)
            .sum()
    }
}

/// Vertex counts of the regions the analysis distinguishes.
#[derive(Debug, Clone, Copy)]
pub struct RegionCounts {
    /// Vertices with radius below the threshold.
    pub inner_disk: usize,
    /// Vertices in the outer band.
    pub n_outer: usize,
    /// Outer-band vertices inside wide runs.
    pub wide_run_vertices: usize,
    /// Outer-band vertices inside narrow runs (all of them).
    pub narrow_run_vertices: usize,
    /// Outer-band vertices inside narrow runs that exceed the component
    /// limit.
    pub large_narrow_vertices: usize,
}

/// Assigns each outer-band vertex to its angular sector. The top angular
/// boundary is clamped into the last sector.
pub fn discretize(
    g: &Graph,
    params: &ModelParams,
    tau: f64,
) -> Result<SectorOccupancy, DiagnosticsError> {
    let constants = analysis_constants(params, tau)?;
    let coords = g
        .coordinates()
        .ok_or(DiagnosticsError::MissingCoordinates)?;
    let mut counts = vec![0u32; constants.n_sectors];
    for p in coords {
        if p.radius() >= constants.rho {
            let sector =
                ((p.angle() / constants.sector_width) as usize).min(constants.n_sectors - 1);
            counts[sector] += 1;
        }
    }
    Ok(SectorOccupancy { constants, counts })
}

/// Circular run decomposition of a sector occupancy.
pub fn classify_runs(occ: &SectorOccupancy) -> RunClassification {
    RunClassification::from_counts(&occ.counts, occ.constants.w, occ.constants.component_limit)
}

/// Composes [`discretize`] and [`classify_runs`] into region totals.
pub fn region_counts(
    g: &Graph,
    params: &ModelParams,
    tau: f64,
) -> Result<RegionCounts, DiagnosticsError> {
    let occ = discretize(g, params, tau)?;
    let runs = classify_runs(&occ);
    let n_outer = occ.outer_vertex_count();
    Ok(RegionCounts {
        inner_disk: g.coordinates().expect("checked by discretize").len() - n_outer,
        n_outer,
        wide_run_vertices: runs.wide_vertices(),
        narrow_run_vertices: runs.narrow_vertices(),
        large_narrow_vertices: runs.large_narrow_vertices(),
    })
}

/// Expected total length of circular success runs of length at least `w`
/// among `n_sectors` independent trials with success probability `p`:
/// `n' * p^w * (w(1-p) + p)`.
///
/// That closed form holds for `w < n'`; at `w = n'` the only qualifying
/// outcome is the fully successful circle, so the expectation degenerates
/// to `n' * p^{n'}`. Callers counting runs of *more than* `w` sectors
/// pass `w + 1`.
pub fn expected_run_mass(n_sectors: usize, p: f64, w: f64) -> Result<f64, DiagnosticsError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(DiagnosticsError::OutOfRange {
            name: "p",
            value: p,
            lo: 0.0,
            hi: 1.0,
        });
    }
    if !(1.0..=n_sectors as f64).contains(&w) {
        return Err(DiagnosticsError::OutOfRange {
            name: "w",
            value: w,
            lo: 1.0,
            hi: n_sectors as f64,
        });
    }
    let n = n_sectors as f64;
    if w == n {
        return Ok(n * p.powf(w));
    }
    Ok(n * p.powf(w) * (w * (1.0 - p) + p))
}

/// Closed-form lower and upper bounds on the probability that a sector
/// contains at least one vertex: `1 - e^{-gamma/4}` and `exp(-e^{-gamma})`.
pub fn occupancy_probability_bounds(constants: &AnalysisConstants) -> (f64, f64) {
    let gamma = constants.gamma;
    (1.0 - (-gamma / 4.0).exp(), (-(-gamma).exp()).exp())
}

/// Region counts next to their leading-order predictors (with constant 1),
/// as plain empirical/predictor ratios.
#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub constants: AnalysisConstants,
    pub counts: RegionCounts,
    /// Realized number of vertices in the graph under measurement.
    pub vertex_count: usize,
    pub predicted_inner: f64,
    pub predicted_wide: f64,
    pub predicted_large_narrow: f64,
    pub inner_ratio: f64,
    pub wide_ratio: f64,
    pub large_narrow_ratio: f64,
    /// Predicted relative cover excess, `gamma^{-alpha}`.
    pub excess_ratio: f64,
    pub nonempty_fraction: f64,
    pub occupancy_lower: f64,
    pub occupancy_upper: f64,
    /// Edges between outer-band vertices whose angular distance exceeds
    /// the sector width. Zero by construction of the sector width.
    pub outer_edge_span_violations: usize,
}

pub fn bounds_report(
    g: &Graph,
    params: &ModelParams,
    tau: f64,
) -> Result<BoundsReport, DiagnosticsError> {
    let occ = discretize(g, params, tau)?;
    let runs = classify_runs(&occ);
    let coords = g.coordinates().expect("checked by discretize");
    let constants = occ.constants;
    let n_outer = occ.outer_vertex_count();
    let counts = RegionCounts {
        inner_disk: coords.len() - n_outer,
        n_outer,
        wide_run_vertices: runs.wide_vertices(),
        narrow_run_vertices: runs.narrow_vertices(),
        large_narrow_vertices: runs.large_narrow_vertices(),
    };

    let n = params.n() as f64;
    let lln = n.ln().ln();
    let llln = lln.ln();
    let predicted_inner = n * constants.gamma.powf(-params.alpha());
    let predicted_wide = tau.powf(0.75) * n / (lln.powf(0.25) * llln.sqrt());
    let predicted_large_narrow = tau * n * lln / (constants.gamma * n.ln().powf(tau / 18.0));

    let violations = g
        .edges()
        .filter(|&(u, v)| {
            let pu = &coords[u as usize];
            let pv = &coords[v as usize];
            pu.radius() >= constants.rho
                && pv.radius() >= constants.rho
                && angular_distance(pu, pv) > constants.sector_width
        })
        .count();

    let (occupancy_lower, occupancy_upper) = occupancy_probability_bounds(&constants);
    Ok(BoundsReport {
        constants,
        counts,
        vertex_count: coords.len(),
        predicted_inner,
        predicted_wide,
        predicted_large_narrow,
        inner_ratio: counts.inner_disk as f64 / predicted_inner,
        wide_ratio: counts.wide_run_vertices as f64 / predicted_wide,
        large_narrow_ratio: counts.large_narrow_vertices as f64 / predicted_large_narrow,
        excess_ratio: constants.gamma.powf(-params.alpha()),
        nonempty_fraction: occ.nonempty_fraction(),
        occupancy_lower,
        occupancy_upper,
        outer_edge_span_violations: violations,
    })
}

/// Exhaustive expectation of the circular run mass, used as the oracle
/// for [`expected_run_mass`]. Enumerates all `2^n` outcomes.
#[cfg(test)]
pub(crate) fn run_mass_by_enumeration(n_sectors: usize, p: f64, w: usize) -> f64 {
    assert!(n_sectors <= 20);
    let mass = |bits: u32| -> usize {
        if bits == (1u32 << n_sectors) - 1 {
            return if n_sectors >= w { n_sectors } else { 0 };
        }
        let anchor = (0..n_sectors).find(|&i| bits & (1 << i) == 0).unwrap();
        let mut total = 0;
        let mut run = 0;
        for step in 1..=n_sectors {
            let idx = (anchor + step) % n_sectors;
            if bits & (1 << idx) != 0 {
                run += 1;
            } else {
                if run >= w {
                    total += run;
                }
                run = 0;
            }
        }
        total
    };
    let mut expectation = 0.0;
    for bits in 0..(1u32 << n_sectors) {
        let ones = bits.count_ones() as i32;
        let prob = p.powi(ones) * (1.0 - p).powi(n_sectors as i32 - ones);
        expectation += prob * mass(bits) as f64;
    }
    expectation
}
