//! Points on the unit circle and the metrics between them.
//!
//! Angles live on `[0, 2π)`; every constructor reduces its argument into that
//! range. Directions recovered from `(sin, cos)` resultants go through
//! [`atan2pi`], which is quadrant-aware and rejects the zero resultant.

use std::f64::consts::{PI, TAU};
use std::fmt;

use thiserror::Error;

/// Errors from directional computations on the circle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    /// The `(sin, cos)` resultant was (numerically) zero, so no direction exists.
    #[error("direction undefined: zero resultant")]
    UndefinedDirection,
    /// Two paired slices had different lengths.
    #[error("dimension mismatch: {left} angles vs {right} weights")]
    DimensionMismatch { left: usize, right: usize },
    /// Weights were negative, non-finite, or did not sum to one.
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
}

/// Tolerance below which a resultant length counts as zero.
pub const RESULTANT_EPS: f64 = 1e-12;

/// Tolerance for the weighted-mean precondition `sum(weights) == 1`.
pub const WEIGHT_SUM_EPS: f64 = 1e-12;

/// Reduce radians into the canonical range `[0, 2π)`.
pub(crate) fn reduce(radians: f64) -> f64 {
    let r = radians.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs.
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// An angle on the unit circle, stored canonically in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Angle(f64);

impl Angle {
    /// Zero direction.
    pub const ZERO: Angle = Angle(0.0);

    /// Wrap `radians` into `[0, 2π)`.
    ///
    /// # Panics
    ///
    /// Panics if `radians` is not finite.
    ///
    /// # Example
    ///
    /// ```
    /// use circ_trunc::Angle;
    /// assert_eq!(Angle::new(-0.5).radians(), std::f64::consts::TAU - 0.5);
    /// ```
    pub fn new(radians: f64) -> Self {
        assert!(radians.is_finite(), "angle must be finite, got {radians}");
        Angle(reduce(radians))
    }

    /// The canonical radian value in `[0, 2π)`.
    #[inline]
    pub fn radians(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn sin(self) -> f64 {
        self.0.sin()
    }

    #[inline]
    pub fn cos(self) -> f64 {
        self.0.cos()
    }

    #[inline]
    pub fn sin_cos(self) -> (f64, f64) {
        self.0.sin_cos()
    }

    /// This angle rotated by `delta` radians (any sign), reduced canonically.
    #[inline]
    pub fn rotated(self, delta: f64) -> Self {
        Angle::new(self.0 + delta)
    }

    /// The antipodal point.
    #[inline]
    pub fn antipode(self) -> Self {
        Angle::new(self.0 + PI)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Quadrant-aware inverse tangent: the direction of the vector `(c, s)`,
/// returned in `[0, 2π)`.
///
/// Branches by the signs of `s` and `c` so that the full circle is covered:
/// first quadrant maps to `[0, π/2)`, a negative cosine lands in
/// `(π/2, 3π/2)`, and a negative sine with nonnegative cosine lands in
/// `(3π/2, 2π)`; the axes map to `π/2`, `π`, `3π/2` exactly.
///
/// # Errors
///
/// [`GeometryError::UndefinedDirection`] when both components are zero.
///
/// # Example
///
/// ```
/// use circ_trunc::{atan2pi, Angle};
/// use std::f64::consts::PI;
/// let dir = atan2pi(-1.0, 1.0).unwrap();
/// assert!((dir.radians() - 7.0 * PI / 4.0).abs() < 1e-15);
/// ```
pub fn atan2pi(s: f64, c: f64) -> Result<Angle, GeometryError> {
    if s == 0.0 && c == 0.0 {
        return Err(GeometryError::UndefinedDirection);
    }
    Ok(Angle::new(f64::atan2(s, c).rem_euclid(TAU)))
}

/// Chordal distance `1 - cos(a - b)`, in `[0, 2]`.
#[inline]
pub fn chord_metric(a: Angle, b: Angle) -> f64 {
    1.0 - (a.radians() - b.radians()).cos()
}

/// Arc-length distance `π - |π - |a - b||`, the shorter way around, in `[0, π]`.
#[inline]
pub fn arc_metric(a: Angle, b: Angle) -> f64 {
    let diff = (a.radians() - b.radians()).abs();
    PI - (PI - diff).abs()
}

/// Component sums `(Σ sin θᵢ, Σ cos θᵢ)` of the resultant vector.
#[inline]
pub fn resultant_sums(angles: &[Angle]) -> (f64, f64) {
    let mut s = 0.0;
    let mut c = 0.0;
    for a in angles {
        let (si, ci) = a.sin_cos();
        s += si;
        c += ci;
    }
    (s, c)
}

/// Direction of the weighted resultant `Σ wᵢ (cos θᵢ, sin θᵢ)`.
///
/// Weights must be nonnegative, finite, and sum to one within
/// [`WEIGHT_SUM_EPS`].
///
/// # Errors
///
/// - [`GeometryError::DimensionMismatch`] if the slices differ in length.
/// - [`GeometryError::InvalidWeights`] if any weight is negative/non-finite or
///   the weights do not sum to one.
/// - [`GeometryError::UndefinedDirection`] if the resultant length is below
///   [`RESULTANT_EPS`].
pub fn weighted_mean_direction(angles: &[Angle], weights: &[f64]) -> Result<Angle, GeometryError> {
    if angles.len() != weights.len() {
        return Err(GeometryError::DimensionMismatch {
            left: angles.len(),
            right: weights.len(),
        });
    }
    if angles.is_empty() {
        return Err(GeometryError::InvalidWeights("empty input".into()));
    }
    let mut sum = 0.0;
    for &w in weights {
        if !w.is_finite() || w < 0.0 {
            return Err(GeometryError::InvalidWeights(format!(
                "weights must be finite and nonnegative, got {w}"
            )));
        }
        sum += w;
    }
    if (sum - 1.0).abs() > WEIGHT_SUM_EPS {
        return Err(GeometryError::InvalidWeights(format!(
            "weights sum to {sum}, expected 1"
        )));
    }
    let mut s = 0.0;
    let mut c = 0.0;
    for (a, &w) in angles.iter().zip(weights) {
        let (si, ci) = a.sin_cos();
        s += w * si;
        c += w * ci;
    }
    if s.hypot(c) < RESULTANT_EPS {
        return Err(GeometryError::UndefinedDirection);
    }
    atan2pi(s, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn new_reduces_into_range() {
        close(Angle::new(-0.1).radians(), TAU - 0.1, 1e-15);
        close(Angle::new(7.0).radians(), 7.0 - TAU, 1e-15);
        assert_eq!(Angle::new(TAU).radians(), 0.0);
        assert_eq!(Angle::new(0.0).radians(), 0.0);
        // A tiny negative input must not round up to exactly 2π.
        assert!(Angle::new(-1e-17).radians() < TAU);
    }

    #[test]
    #[should_panic(expected = "finite")]
    fn new_rejects_nan() {
        let _ = Angle::new(f64::NAN);
    }

    #[test]
    fn atan2pi_covers_all_branches() {
        // First quadrant: plain inverse tangent.
        close(atan2pi(1.0, 1.0).unwrap().radians(), PI / 4.0, 1e-15);
        // Negative cosine: middle branch.
        close(atan2pi(1.0, -1.0).unwrap().radians(), 3.0 * PI / 4.0, 1e-15);
        close(atan2pi(-1.0, -1.0).unwrap().radians(), 5.0 * PI / 4.0, 1e-15);
        // Positive-x axis / sine axis cases.
        close(atan2pi(1.0, 0.0).unwrap().radians(), PI / 2.0, 1e-15);
        close(atan2pi(0.0, -1.0).unwrap().radians(), PI, 1e-15);
        close(atan2pi(-1.0, 0.0).unwrap().radians(), 3.0 * PI / 2.0, 1e-15);
        // Negative sine, nonnegative cosine: top branch.
        close(atan2pi(-1.0, 1.0).unwrap().radians(), 7.0 * PI / 4.0, 1e-15);
        close(atan2pi(0.0, 1.0).unwrap().radians(), 0.0, 1e-15);
    }

    #[test]
    fn atan2pi_rejects_zero_resultant() {
        assert_eq!(atan2pi(0.0, 0.0), Err(GeometryError::UndefinedDirection));
        assert_eq!(atan2pi(-0.0, 0.0), Err(GeometryError::UndefinedDirection));
    }

    #[test]
    fn chord_metric_values() {
        close(chord_metric(Angle::ZERO, Angle::new(PI)), 2.0, 1e-15);
        close(chord_metric(Angle::ZERO, Angle::new(PI / 2.0)), 1.0, 1e-15);
        close(chord_metric(Angle::new(1.3), Angle::new(1.3)), 0.0, 1e-15);
        // Symmetric in its arguments.
        close(
            chord_metric(Angle::new(0.4), Angle::new(2.9)),
            chord_metric(Angle::new(2.9), Angle::new(0.4)),
            0.0,
        );
    }

    #[test]
    fn chord_is_half_squared_euclidean_chord() {
        // sqrt(2 d) equals the straight-line chord length between the two
        // points on the unit circle.
        let cases = [(0.0, 1.0), (0.3, 5.9), (2.0, 2.0), (1.0, 4.14)];
        for (x, y) in cases {
            let a = Angle::new(x);
            let b = Angle::new(y);
            let chord = ((a.cos() - b.cos()).powi(2) + (a.sin() - b.sin()).powi(2)).sqrt();
            close((2.0 * chord_metric(a, b)).sqrt(), chord, 1e-12);
        }
    }

    #[test]
    fn arc_metric_takes_shorter_way() {
        close(arc_metric(Angle::ZERO, Angle::new(3.0 * PI / 2.0)), PI / 2.0, 1e-15);
        close(arc_metric(Angle::ZERO, Angle::new(PI)), PI, 1e-15);
        close(arc_metric(Angle::new(0.1), Angle::new(6.2)), 0.1 + TAU - 6.2, 1e-12);
        close(arc_metric(Angle::new(2.0), Angle::new(2.0)), 0.0, 1e-15);
    }

    #[test]
    fn weighted_mean_basic() {
        let angles = [Angle::ZERO, Angle::new(PI / 2.0)];
        let mean = weighted_mean_direction(&angles, &[0.5, 0.5]).unwrap();
        close(mean.radians(), PI / 4.0, 1e-15);
    }

    #[test]
    fn weighted_mean_antipodal_is_undefined() {
        let angles = [Angle::ZERO, Angle::new(PI)];
        assert_eq!(
            weighted_mean_direction(&angles, &[0.5, 0.5]),
            Err(GeometryError::UndefinedDirection)
        );
    }

    #[test]
    fn weighted_mean_validates_inputs() {
        let angles = [Angle::ZERO, Angle::new(1.0)];
        assert!(matches!(
            weighted_mean_direction(&angles, &[0.5]),
            Err(GeometryError::DimensionMismatch { left: 2, right: 1 })
        ));
        assert!(matches!(
            weighted_mean_direction(&angles, &[0.7, 0.7]),
            Err(GeometryError::InvalidWeights(_))
        ));
        assert!(matches!(
            weighted_mean_direction(&angles, &[-0.5, 1.5]),
            Err(GeometryError::InvalidWeights(_))
        ));
    }

    #[test]
    fn weighted_mean_skewed_weights() {
        // All the weight on one point returns that point.
        let angles = [Angle::new(1.0), Angle::new(4.0)];
        let mean = weighted_mean_direction(&angles, &[1.0, 0.0]).unwrap();
        close(mean.radians(), 1.0, 1e-15);
    }
}
