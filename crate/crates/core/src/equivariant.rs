//! Symmetry-adapted estimation and the data-driven contraction of the action
//! space that a symmetry induces.
//!
//! Two symmetries are treated concretely. Under full rotation symmetry
//! (every observation shifted by a common offset) exactly one equivariant
//! rule remains admissible for the cosine loss: the direction of the
//! likelihood-weighted average over all shifts, computed by
//! [`admissible_equivariant`]. Under the two-element reflection symmetry of a
//! location confined to `[0, bound]` — the map `θ ↦ (bound − θ) mod 2π`
//! fixing the midpoint `bound / 2` — conditioning on the observed sample pins
//! every equivariant rule into a sub-arc around the midpoint. The sub-arc is
//! described by [`ReducedSpace`], computed in closed form for the
//! circular-normal family by [`reduced_space_circular_normal`], and any
//! estimate can be projected onto it with [`improve_equivariant`], which can
//! only lower the expected cosine loss.

use std::f64::consts::{PI, TAU};

use thiserror::Error;

use crate::angle::{atan2pi, resultant_sums, Angle};
use crate::arc::Arc;
use crate::dist::CircularModel;
use crate::estimators::CircularSample;
use crate::quad::periodic_integral_adaptive;

/// Quadrature tolerance per trigonometric component of the averaged
/// direction.
pub const DIRECTION_QUAD_TOL: f64 = 1e-10;

/// Below this magnitude both direction components are treated as vanished.
pub const DIRECTION_EPS: f64 = 1e-12;

/// Angular tolerance for detecting a mean direction on the mirror axis
/// (`bound/2` or its antipode), where the reduced arc collapses to a point.
pub const MIRROR_AXIS_EPS: f64 = 1e-12;

/// Differences of the reflection tangent smaller than this are ignored by
/// the monotonicity screen.
pub const MONOTONE_EPS: f64 = 1e-12;

/// Errors raised by the symmetry reductions.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum EquivariantError {
    /// Both direction components vanished, so the averaged direction is
    /// undefined (a flat density does this for every sample).
    #[error("averaged direction is undefined: both components vanish")]
    UndefinedDirection,
    /// The likelihood vanishes at a trial location and at its mirror image,
    /// leaving the reflection tangent undefined.
    #[error("likelihood vanishes at the trial location and its mirror image")]
    ZeroDensity,
    /// The requested symmetry has no direct one-dimensional reduction.
    #[error("no reduction implemented for this symmetry: {0}")]
    UnsupportedSymmetry(&'static str),
}

/// Symmetry of an estimation problem with circular estimand.
#[derive(Debug, Clone, PartialEq)]
pub enum SymmetryGroup {
    /// Full rotation symmetry: `θ ↦ (θ + α) mod 2π` for every offset `α`.
    Rotation,
    /// A common rotation applied to each coordinate of a sample on the
    /// `components`-fold torus.
    ComponentwiseRotation { components: u32 },
    /// Two-element symmetry `{identity, θ ↦ (bound − θ) mod 2π}`: the
    /// reflection fixing the midpoint `bound / 2`, which maps a location
    /// constraint `[0, bound]` onto itself.
    Reflection { bound: f64 },
}

/// Image of `theta` under the reflection that swaps `0` and `bound`.
pub fn reflect(bound: f64, theta: Angle) -> Angle {
    Angle::new(bound - theta.radians())
}

/// Orientation of the reflection contraction: the sign of the reflection
/// tangent at the constraint endpoint `ν = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonotoneSign {
    /// The reduced arc sits below the midpoint: `[boundary_image, bound/2]`.
    Negative,
    /// The reduced arc is the singleton midpoint `{bound/2}`.
    Zero,
    /// The reduced arc sits above the midpoint: `[bound/2, boundary_image]`.
    Positive,
}

/// Data-dependent contraction of the action space under the reflection
/// symmetry of a location constrained to `[0, bound]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedSpace {
    /// Closed sub-arc of `[0, bound]` containing the midpoint `bound/2`;
    /// its length never exceeds `bound/2`. Equivariant estimates outside it
    /// are beaten by their projection onto it.
    pub arc: Arc,
    /// Which side of the midpoint the arc occupies.
    pub monotone_sign: MonotoneSign,
    /// Common image of the constraint endpoints `0` and `bound` under the
    /// reduction map: the far end of `arc` (equal to `bound/2` when the arc
    /// is a singleton).
    pub boundary_image: Angle,
}

/// Sample log-likelihood of a trial location under the shape of `model`.
///
/// Families implementing [`CircularModel`] are reflection-symmetric about
/// their location, so the density at `θ` under location `x` depends only on
/// `cos(θ − x)`.
fn location_log_likelihood(
    model: &dyn CircularModel,
    sample: &CircularSample,
    location: f64,
) -> f64 {
    sample
        .angles()
        .iter()
        .map(|&theta| model.density_t((theta.radians() - location).cos()).ln())
        .sum()
}

/// Circular distance from `theta` to the nearer point of the mirror axis
/// `{half, half + π}`.
fn mirror_axis_distance(theta: Angle, half: f64) -> f64 {
    let d = (theta.radians() - half).rem_euclid(PI);
    d.min(PI - d)
}

/// The unique admissible rotation-equivariant estimator under cosine loss:
/// the direction of the likelihood-weighted average of all shifted
/// locations.
///
/// Both trigonometric components are integrated by adaptive periodic
/// quadrature with tolerance [`DIRECTION_QUAD_TOL`], after normalizing the
/// likelihood by its largest value on a coarse scan so the integrands stay
/// within floating-point range for any sample size.
///
/// For the circular-normal family this estimator coincides with the sample
/// mean direction; for a single observation from any symmetric unimodal
/// family it returns the observation itself.
///
/// # Errors
///
/// [`EquivariantError::UndefinedDirection`] when both averaged components
/// fall below [`DIRECTION_EPS`].
pub fn admissible_equivariant(
    model: &dyn CircularModel,
    sample: &CircularSample,
) -> Result<Angle, EquivariantError> {
    const SCAN: usize = 256;
    let mut peak = f64::NEG_INFINITY;
    for k in 0..SCAN {
        let trial = TAU * k as f64 / SCAN as f64;
        peak = peak.max(location_log_likelihood(model, sample, trial));
    }
    if !peak.is_finite() {
        peak = 0.0;
    }
    let weight = |alpha: f64| (location_log_likelihood(model, sample, alpha) - peak).exp();
    let sin_avg = periodic_integral_adaptive(|a| weight(a) * a.sin(), DIRECTION_QUAD_TOL);
    let cos_avg = periodic_integral_adaptive(|a| weight(a) * a.cos(), DIRECTION_QUAD_TOL);
    if sin_avg.abs() < DIRECTION_EPS && cos_avg.abs() < DIRECTION_EPS {
        return Err(EquivariantError::UndefinedDirection);
    }
    atan2pi(sin_avg, cos_avg).map_err(|_| EquivariantError::UndefinedDirection)
}

/// Tangent of the angular offset of the reflection reduction map from the
/// midpoint `bound/2`, at the trial location `nu`.
///
/// The value is `tanh((L(bound−ν) − L(ν)) / 2) · tan(bound/2 − ν)` with `L`
/// the sample log-likelihood; working in log space keeps the density
/// products from underflowing for large samples. The tangent vanishes at
/// `ν = bound/2`, is symmetric under `ν ↦ bound − ν`, and flips sign when
/// the sample is reflected.
///
/// # Errors
///
/// [`EquivariantError::ZeroDensity`] when the likelihood vanishes at both
/// `nu` and its mirror image, leaving the ratio undefined.
///
/// # Panics
///
/// Panics if `bound` is outside `(0, π]` or `nu` is not finite.
pub fn reflection_tangent(
    model: &dyn CircularModel,
    sample: &CircularSample,
    bound: f64,
    nu: f64,
) -> Result<f64, EquivariantError> {
    assert!(
        bound > 0.0 && bound <= PI,
        "reflection bound must lie in (0, pi], got {bound}"
    );
    assert!(nu.is_finite(), "trial location must be finite");
    let here = location_log_likelihood(model, sample, nu);
    let mirrored = location_log_likelihood(model, sample, bound - nu);
    if here == f64::NEG_INFINITY && mirrored == f64::NEG_INFINITY {
        return Err(EquivariantError::ZeroDensity);
    }
    Ok(((mirrored - here) / 2.0).tanh() * (bound / 2.0 - nu).tan())
}

/// Closed form of [`reflection_tangent`] for a [`crate::dist::CircularNormal`]
/// sample with known concentration `kappa`, in terms of the sufficient
/// statistic: mean direction `theta_bar` and resultant length `resultant`.
///
/// Equals `tanh(κ R sin(θ̄ − bound/2) sin(bound/2 − ν)) · tan(bound/2 − ν)`.
///
/// # Panics
///
/// Panics if `bound` is outside `(0, π]`, `resultant` is negative, or
/// `kappa` is not a positive finite number.
pub fn reflection_tangent_circular_normal(
    theta_bar: Angle,
    resultant: f64,
    kappa: f64,
    bound: f64,
    nu: f64,
) -> f64 {
    assert!(
        bound > 0.0 && bound <= PI,
        "reflection bound must lie in (0, pi], got {bound}"
    );
    assert!(
        resultant >= 0.0 && resultant.is_finite(),
        "resultant length must be nonnegative"
    );
    assert!(
        kappa > 0.0 && kappa.is_finite(),
        "concentration must be positive"
    );
    let half = bound / 2.0;
    let drive = kappa * resultant * (theta_bar.radians() - half).sin() * (half - nu).sin();
    drive.tanh() * (half - nu).tan()
}

/// Reduced action space for a circular-normal sample with known
/// concentration `kappa` under the constraint `location ∈ [0, bound]`,
/// from the sufficient statistic (mean direction, resultant length).
///
/// The arc always contains the midpoint `bound/2`, has length at most
/// `bound/2`, and stays inside `[0, bound]`. A mean direction on the mirror
/// axis (within [`MIRROR_AXIS_EPS`] of `bound/2` or its antipode) or a
/// vanishing resultant collapses the arc to the singleton midpoint.
///
/// # Panics
///
/// Panics if `bound` is outside `(0, π]`, `resultant` is negative or not
/// finite, or `kappa` is not a positive finite number.
pub fn reduced_space_circular_normal(
    theta_bar: Angle,
    resultant: f64,
    kappa: f64,
    bound: f64,
) -> ReducedSpace {
    assert!(
        bound > 0.0 && bound <= PI,
        "reflection bound must lie in (0, pi], got {bound}"
    );
    assert!(
        resultant >= 0.0 && resultant.is_finite(),
        "resultant length must be nonnegative"
    );
    assert!(
        kappa > 0.0 && kappa.is_finite(),
        "concentration must be positive"
    );
    let half = bound / 2.0;
    let swing = (theta_bar.radians() - half).sin();
    if mirror_axis_distance(theta_bar, half) <= MIRROR_AXIS_EPS || resultant == 0.0 || swing == 0.0
    {
        let mid = Angle::new(half);
        return ReducedSpace {
            arc: Arc::segment(mid, mid),
            monotone_sign: MonotoneSign::Zero,
            boundary_image: mid,
        };
    }
    // Image of the constraint endpoints under the reduction map. For
    // bound = π the tangent factor is effectively a step in `swing`, which
    // is why mirror-axis ties are resolved before reaching this point.
    let endpoint = half + (half.tan() * (kappa * resultant * swing * half.sin()).tanh()).atan();
    let far = Angle::new(endpoint);
    let mid = Angle::new(half);
    if swing > 0.0 {
        ReducedSpace {
            arc: Arc::segment(mid, far),
            monotone_sign: MonotoneSign::Positive,
            boundary_image: far,
        }
    } else {
        ReducedSpace {
            arc: Arc::segment(far, mid),
            monotone_sign: MonotoneSign::Negative,
            boundary_image: far,
        }
    }
}

/// Reduction map of a single constraint point for the given symmetry.
///
/// Under full rotation symmetry the map is constant in `nu` — the averaged
/// direction of [`admissible_equivariant`]. Under the reflection symmetry it
/// is `(bound/2 + atan(reflection_tangent(ν))) mod 2π`; if the likelihood
/// vanishes at both `nu` and its mirror the map defensively falls back to
/// the identity (unreachable for strictly positive densities).
///
/// # Errors
///
/// Propagates [`EquivariantError::UndefinedDirection`] from the rotation
/// path, and returns [`EquivariantError::UnsupportedSymmetry`] for the
/// componentwise torus rotations, which reduce coordinate by coordinate
/// rather than through a single circular map.
pub fn reduction_point(
    group: &SymmetryGroup,
    model: &dyn CircularModel,
    sample: &CircularSample,
    nu: Angle,
) -> Result<Angle, EquivariantError> {
    match group {
        SymmetryGroup::Rotation => admissible_equivariant(model, sample),
        SymmetryGroup::Reflection { bound } => {
            match reflection_tangent(model, sample, *bound, nu.radians()) {
                Ok(tangent) => Ok(Angle::new(bound / 2.0 + tangent.atan())),
                Err(EquivariantError::ZeroDensity) => Ok(nu),
                Err(other) => Err(other),
            }
        }
        SymmetryGroup::ComponentwiseRotation { .. } => Err(EquivariantError::UnsupportedSymmetry(
            "componentwise torus rotations act per coordinate; reduce each component separately",
        )),
    }
}

/// Pointwise values of the reflection reduction map on a grid, with the
/// outcome of the monotonicity screen for the underlying tangent.
#[derive(Debug, Clone)]
pub struct ReductionCurve {
    /// `(bound/2 + atan(tangent(ν))) mod 2π` per grid point.
    pub values: Vec<Angle>,
    /// Whether consecutive tangent differences keep a single sign on each
    /// side of the midpoint (the map is symmetric about `bound/2`, so the
    /// screen runs per half). `false` is a soft warning, not an error: the
    /// projection improvement needs the tangent to be one-directional away
    /// from the midpoint, and this flags samples where it is not.
    pub monotone: bool,
}

/// Evaluates the reflection reduction map on `nu_grid` and screens the
/// underlying tangent for monotonicity on each side of the midpoint.
///
/// The convex closure of the returned values reproduces
/// [`ReducedSpace::arc`] up to the grid resolution. Grid points where the
/// likelihood vanishes at both the location and its mirror fall back to the
/// identity value and are skipped by the screen.
///
/// # Panics
///
/// Panics if `bound` is outside `(0, π]` or a grid point is not finite.
pub fn reduction_map_reflection(
    model: &dyn CircularModel,
    sample: &CircularSample,
    bound: f64,
    nu_grid: &[f64],
) -> ReductionCurve {
    let half = bound / 2.0;
    let mut values = Vec::with_capacity(nu_grid.len());
    let mut tangents: Vec<Option<f64>> = Vec::with_capacity(nu_grid.len());
    for &nu in nu_grid {
        match reflection_tangent(model, sample, bound, nu) {
            Ok(tangent) => {
                values.push(Angle::new(half + tangent.atan()));
                tangents.push(Some(tangent));
            }
            Err(_) => {
                values.push(Angle::new(nu));
                tangents.push(None);
            }
        }
    }
    let side_consistent = |below: bool| -> bool {
        let picked: Vec<f64> = nu_grid
            .iter()
            .zip(&tangents)
            .filter(|&(&nu, _)| {
                if below {
                    nu <= half + MONOTONE_EPS
                } else {
                    nu >= half - MONOTONE_EPS
                }
            })
            .filter_map(|(_, tangent)| *tangent)
            .collect();
        sign_consistent(&picked)
    };
    ReductionCurve {
        values,
        monotone: side_consistent(true) && side_consistent(false),
    }
}

/// Whether consecutive differences of `values` keep a single sign, ignoring
/// differences below [`MONOTONE_EPS`].
fn sign_consistent(values: &[f64]) -> bool {
    let mut direction = 0.0f64;
    for pair in values.windows(2) {
        let diff = pair[1] - pair[0];
        if diff.abs() <= MONOTONE_EPS {
            continue;
        }
        if direction == 0.0 {
            direction = diff.signum();
        } else if diff.signum() != direction {
            return false;
        }
    }
    true
}

/// Projects the estimate `delta` onto the reduced arc.
///
/// This is nearest-point projection under the cosine loss: the point of the
/// circle equidistant from both arc ends — the antipode of the arc midpoint,
/// at `π + boundary_image/2 + bound/4` — splits the complement, and the tie
/// exactly there resolves toward the midpoint end `bound/2`. When the mean
/// direction `theta_bar` lies on the mirror axis (within
/// [`MIRROR_AXIS_EPS`]) the arc is the singleton midpoint and every estimate
/// maps there.
///
/// # Panics
///
/// Panics if `bound` is outside `(0, π]`.
pub fn improve_equivariant(
    delta: Angle,
    reduced: &ReducedSpace,
    theta_bar: Angle,
    bound: f64,
) -> Angle {
    assert!(
        bound > 0.0 && bound <= PI,
        "reflection bound must lie in (0, pi], got {bound}"
    );
    let half = bound / 2.0;
    if mirror_axis_distance(theta_bar, half) <= MIRROR_AXIS_EPS {
        return Angle::new(half);
    }
    let far = reduced.boundary_image.radians();
    // Antipode of the arc midpoint: equidistant from both arc ends.
    let split = PI + far / 2.0 + bound / 4.0;
    let d = delta.radians();
    match reduced.monotone_sign {
        MonotoneSign::Zero => Angle::new(half),
        MonotoneSign::Negative => {
            debug_assert!(far <= half);
            if d >= far && d <= half {
                delta
            } else if d < far || d > split {
                Angle::new(far)
            } else {
                Angle::new(half)
            }
        }
        MonotoneSign::Positive => {
            debug_assert!(far >= half);
            if d >= half && d <= far {
                delta
            } else if d > far && d < split {
                Angle::new(far)
            } else {
                Angle::new(half)
            }
        }
    }
}

/// Projects an arbitrary estimate onto the sample's reduced arc for a
/// circular-normal model with known concentration `kappa` and location
/// constrained to `[0, bound]`.
///
/// Convenience composition of [`reduced_space_circular_normal`] and
/// [`improve_equivariant`]; a sample with an exactly vanishing resultant
/// collapses to the midpoint `bound/2`.
///
/// # Panics
///
/// Panics if `bound` is outside `(0, π]` or `kappa` is not a positive
/// finite number.
pub fn reflect_estimate_circular_normal(
    delta: Angle,
    sample: &CircularSample,
    kappa: f64,
    bound: f64,
) -> Angle {
    let (s, c) = resultant_sums(sample.angles());
    let theta_bar = match atan2pi(s, c) {
        Ok(direction) => direction,
        Err(_) => return Angle::new(bound / 2.0),
    };
    let reduced = reduced_space_circular_normal(theta_bar, s.hypot(c), kappa, bound);
    improve_equivariant(delta, &reduced, theta_bar, bound)
}
