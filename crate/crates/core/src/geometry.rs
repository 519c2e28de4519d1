//! Math on the hyperbolic disk in native (polar) coordinates.
//!
//! Everything here is a pure function of its arguments. Inverse
//! trigonometric and hyperbolic arguments are clamped to their domains, so
//! floating-point noise at region boundaries degrades into the nearest
//! meaningful answer instead of NaN.

use std::f64::consts::{PI, TAU};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("model requires 1/2 < alpha < 1, got {0}")]
    InvalidAlpha(f64),
    #[error("model requires n >= 1, got 0")]
    InvalidVertexCount,
    #[error("disk radius must be positive, got R = {0} (n = {1}, C = {2})")]
    InvalidRadius(f64, usize, f64),
    #[error("argument {name} = {value} outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("tau must be positive and finite, got {0}")]
    InvalidTau(f64),
    #[error(
        "n = {n} is too small for tau = {tau}: the sector-width exponent is \
         nonpositive there; smallest admissible n is {min_n}"
    )]
    VertexCountTooSmall { n: usize, tau: f64, min_n: usize },
    #[error(
        "degenerate discretization for n = {n}, tau = {tau}, C = {c}: \
         threshold radius rho = {rho} does not satisfy 0 < rho < R = {r}; \
         increase C or n"
    )]
    DegenerateThreshold {
        n: usize,
        tau: f64,
        c: f64,
        rho: f64,
        r: f64,
    },
}

/// A point of the disk, identified by its distance to the origin and the
/// angle to the reference ray. The angle is stored reduced to `[0, 2pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    radius: f64,
    angle: f64,
}

impl PolarPoint {
    /// Creates a point, reducing `angle` modulo `2pi`.
    ///
    /// Panics if `radius` is negative or not finite.
    pub fn new(radius: f64, angle: f64) -> Self {
        assert!(
            radius.is_finite() && radius >= 0.0,
            "radius must be finite and nonnegative, got {radius}"
        );
        assert!(angle.is_finite(), "angle must be finite, got {angle}");
        let mut angle = angle.rem_euclid(TAU);
        // rem_euclid can return TAU itself when the input is a tiny negative.
        if angle >= TAU {
            angle = 0.0;
        }
        Self { radius, angle }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }
}

/// Angular distance between two points: the short way around the circle.
pub fn angular_distance(p: &PolarPoint, q: &PolarPoint) -> f64 {
    PI - (PI - (p.angle - q.angle).abs()).abs()
}

/// Hyperbolic distance between two points in polar coordinates,
/// `acosh(cosh(r1) cosh(r2) - sinh(r1) sinh(r2) cos(dphi))`.
///
/// Evaluated as `cosh(r1 - r2) + sinh(r1) sinh(r2) (2 sin^2(dphi / 2))`,
/// which is the same quantity without the catastrophic cancellation the
/// textbook form suffers at small angular distances; identical points
/// yield exactly zero.
pub fn hyperbolic_distance(p: &PolarPoint, q: &PolarPoint) -> f64 {
    let dphi = angular_distance(p, q);
    let half_sin = (dphi / 2.0).sin();
    let arg = (p.radius - q.radius).cosh()
        + p.radius.sinh() * q.radius.sinh() * (2.0 * half_sin * half_sin);
    arg.max(1.0).acosh()
}

/// Largest angular distance at which points with radii `r1` and `r2` are
/// still within hyperbolic distance `threshold` of each other:
/// `arccos((cosh(r1) cosh(r2) - cosh(R)) / (sinh(r1) sinh(r2)))`.
///
/// The arccos argument leaves `[-1, 1]` exactly when the pair is within
/// the threshold at every angle (`r1 + r2 <= R`, result `pi`) or at none
/// (`|r1 - r2| >= R`, result `0`); a zero radius always falls into one of
/// those regimes, so it needs no special handling. In between, the
/// identity `arccos(x) = 2 arcsin(sqrt((1 - x) / 2))` with
/// `(1 - x) / 2 = sinh((R + r1 - r2) / 2) sinh((R - r1 + r2) / 2) /
/// (sinh(r1) sinh(r2))` avoids the cancellation that makes the direct
/// form lose most of its digits for angles near zero.
pub fn max_angle_theta(r1: f64, r2: f64, threshold: f64) -> f64 {
    if r1 + r2 <= threshold {
        return PI;
    }
    if (r1 - r2).abs() >= threshold {
        return 0.0;
    }
    let s2 = ((threshold + r1 - r2) / 2.0).sinh() * ((threshold - r1 + r2) / 2.0).sinh()
        / (r1.sinh() * r2.sinh());
    2.0 * s2.sqrt().min(1.0).asin()
}

/// Generative parameters of the disk model.
///
/// `n` is the vertex count (or, in the Poisson variant, its expectation),
/// `alpha` controls how strongly mass concentrates at the rim, and the
/// offset `c` shifts the disk radius, which doubles as the connection
/// threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    n: usize,
    alpha: f64,
    c: f64,
    radius: f64,
}

impl ModelParams {
    pub fn new(n: usize, alpha: f64, c: f64) -> Result<Self, GeometryError> {
        if n == 0 {
            return Err(GeometryError::InvalidVertexCount);
        }
        if !(alpha > 0.5 && alpha < 1.0) || !alpha.is_finite() {
            return Err(GeometryError::InvalidAlpha(alpha));
        }
        let radius = 2.0 * (n as f64).ln() + c;
        if radius <= 0.0 || radius.is_nan() {
            return Err(GeometryError::InvalidRadius(radius, n, c));
        }
        Ok(Self {
            n,
            alpha,
            c,
            radius,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Disk radius and connection threshold, `2 ln(n) + C`.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Tail exponent of the degree distribution, `2 alpha + 1`.
    pub fn beta(&self) -> f64 {
        2.0 * self.alpha + 1.0
    }
}

/// Probability that a sampled vertex has radius at most `r`.
pub fn disk_measure(r: f64, params: &ModelParams) -> Result<f64, GeometryError> {
    if !(0.0..=params.radius).contains(&r) {
        return Err(GeometryError::OutOfRange {
            name: "r",
            value: r,
            lo: 0.0,
            hi: params.radius,
        });
    }
    let a = params.alpha;
    Ok(((a * r).cosh() - 1.0) / ((a * params.radius).cosh() - 1.0))
}

/// Inverse of [`disk_measure`]: the radius below which a fraction `u` of
/// the vertex mass lies. Strictly increasing on `[0, 1]`.
pub fn radial_quantile(u: f64, params: &ModelParams) -> Result<f64, GeometryError> {
    if !(0.0..=1.0).contains(&u) {
        return Err(GeometryError::OutOfRange {
            name: "u",
            value: u,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let a = params.alpha;
    Ok((1.0 + u * ((a * params.radius).cosh() - 1.0)).acosh() / a)
}

/// The constants that drive the inner-disk / outer-band discretization.
///
/// All of them follow from `(n, tau, C)`:
///
/// - `gamma`: the width exponent `ln(tau * lln(n) / (2 llln(n)^2))`, with
///   `lln` and `llln` the 2- and 3-fold natural logarithms;
/// - `rho`: the threshold radius separating inner disk from outer band,
///   `R - ln(pi/2 * e^{C/2} * gamma)`;
/// - `sector_width`: the angular width of one sector, chosen as the
///   connection angle of two vertices sitting exactly on the threshold;
/// - `n_sectors`: how many such sectors tile the circle;
/// - `w`: run-length threshold (in sectors) between narrow and wide runs,
///   `e^gamma * llln(n)`;
/// - `component_limit`: the component size up to which separated
///   components are solved exactly, `max(1, floor(tau * lln(n)))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisConstants {
    pub tau: f64,
    pub gamma: f64,
    pub rho: f64,
    pub w: f64,
    pub sector_width: f64,
    pub n_sectors: usize,
    pub component_limit: usize,
}

fn gamma_exponent(n: usize, tau: f64) -> Option<f64> {
    if n < 3 {
        return None;
    }
    let lln = (n as f64).ln().ln();
    if lln <= 0.0 {
        return None;
    }
    let llln = lln.ln();
    let denom = 2.0 * llln * llln;
    if denom <= 0.0 {
        // lln == 1 exactly; the exponent is unbounded there.
        return None;
    }
    let gamma = (tau * lln / denom).ln();
    gamma.is_finite().then_some(gamma)
}

/// Smallest vertex count for which the width exponent is positive at this
/// `tau`. The admissible set is scanned directly because it is not an
/// interval in general.
pub fn min_admissible_n(tau: f64) -> Option<usize> {
    (3..=10_000_000usize).find(|&n| matches!(gamma_exponent(n, tau), Some(g) if g > 0.0))
}

/// Component-size cap for the radius-ordered solver and the run
/// classification: `floor(tau * lnln n)`, with a floor of 1.
pub fn component_limit(n: usize, tau: f64) -> usize {
    if n < 3 {
        return 1;
    }
    let lln = (n as f64).ln().ln();
    ((tau * lln).floor() as usize).max(1)
}

/// Derives the full discretization constant bundle for `(params, tau)`.
///
/// Fails when `n` is too small for the width exponent to be positive (the
/// error names the smallest admissible `n`), or when the resulting
/// threshold radius falls outside the disk, which happens for small `n`
/// combined with small `C`.
pub fn analysis_constants(
    params: &ModelParams,
    tau: f64,
) -> Result<AnalysisConstants, GeometryError> {
    if tau <= 0.0 || !tau.is_finite() {
        return Err(GeometryError::InvalidTau(tau));
    }
    let n = params.n;
    let gamma = match gamma_exponent(n, tau) {
        Some(g) if g > 0.0 => g,
        _ => {
            return Err(GeometryError::VertexCountTooSmall {
                n,
                tau,
                min_n: min_admissible_n(tau).unwrap_or(usize::MAX),
            })
        }
    };
    let r = params.radius;
    let rho = r - (PI / 2.0 * (params.c / 2.0).exp() * gamma).ln();
    if !(rho > 0.0 && rho < r) {
        return Err(GeometryError::DegenerateThreshold {
            n,
            tau,
            c: params.c,
            rho,
            r,
        });
    }
    let sector_width = max_angle_theta(rho, rho, r);
    if sector_width <= 0.0 || sector_width.is_nan() {
        return Err(GeometryError::DegenerateThreshold {
            n,
            tau,
            c: params.c,
            rho,
            r,
        });
    }
    let lln = (n as f64).ln().ln();
    let w = gamma.exp() * lln.ln();
    let n_sectors = (TAU / sector_width).floor() as usize;
    Ok(AnalysisConstants {
        tau,
        gamma,
        rho,
        w,
        sector_width,
        n_sectors: n_sectors.max(1),
        component_limit: component_limit(n, tau),
    })
}
