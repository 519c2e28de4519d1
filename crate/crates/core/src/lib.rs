//! Hyperbolic random graphs and near-optimal vertex cover approximation.
//!
//! The crate has four layers:
//!
//! - [`geometry`]: exact math on the hyperbolic disk (distances, connection
//!   angles, the radial measure) and the derived discretization constants
//!   (threshold radius, sector width, run thresholds).
//! - [`graph`]: a compact immutable graph, edge-list / coordinate file I/O,
//!   and the masked-traversal primitives shared by all solvers.
//! - [`generator`]: samples graphs from the disk model (fixed or Poisson
//!   vertex count) and builds edge sets either naively or with a band/cell
//!   grid; both builders produce identical edge sets.
//! - [`cover`]: the cover algorithms — standard max-degree greedy, the
//!   adapted greedy variants (radius- and degree-ordered) that solve small
//!   separated components exactly, and a branch-and-bound exact solver.
//!
//! [`diagnostics`] sits on top and measures how generated graphs populate
//! the inner disk / outer band and the angular sector runs, next to the
//! closed-form predictors for those quantities.

pub mod cover;
pub mod diagnostics;
pub mod generator;
pub mod geometry;
pub mod graph;

pub use cover::{CoverResult, ExactResult, ExactStatus, Ratio};
pub use generator::{EdgeBuilder, GeneratorConfig, SampleMode};
pub use geometry::{AnalysisConstants, ModelParams, PolarPoint};
pub use graph::{AliveMask, BoundedComponent, DegreeQueue, Graph};
