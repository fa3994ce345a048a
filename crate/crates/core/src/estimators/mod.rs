//! Point estimators of a circular location, behind a common trait with a
//! string-keyed registry, plus maximum-likelihood estimators for the torus,
//! sphere, and cylinder models.

use thiserror::Error;

use crate::angle::{Angle, GeometryError};

mod classical;
mod mle;

pub use classical::{
    ChordalMedian, CircularMedian, MeanDirection, SpatialMedianDirection, WilcoxonMedian,
};
pub use mle::{cylinder_location_mle, sphere_longitude_mle, torus_location_mle};

/// Errors from estimation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimatorError {
    /// The sample contained no observations.
    #[error("sample is empty")]
    EmptySample,
    /// The defining direction does not exist for this sample (for example a
    /// vanishing resultant for the mean direction).
    #[error("estimate undefined: {0}")]
    Undefined(#[from] GeometryError),
    /// The spatial median fell on (or indistinguishably near) the circle's
    /// center, so its direction is undefined.
    #[error("spatial median lies at the center; direction undefined")]
    DegenerateSpatialMedian,
    /// Dimension/structure problems in multi-component samples.
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),
    /// The registry has no estimator under this name.
    #[error("unknown estimator '{0}'")]
    UnknownEstimator(String),
}

/// A nonempty sample of angles.
#[derive(Debug, Clone, PartialEq)]
pub struct CircularSample {
    angles: Vec<Angle>,
}

impl CircularSample {
    /// Wraps the observations.
    ///
    /// # Errors
    ///
    /// [`EstimatorError::EmptySample`] when `angles` is empty.
    pub fn new(angles: Vec<Angle>) -> Result<Self, EstimatorError> {
        if angles.is_empty() {
            return Err(EstimatorError::EmptySample);
        }
        Ok(Self { angles })
    }

    /// The observations.
    pub fn angles(&self) -> &[Angle] {
        &self.angles
    }

    /// Number of observations.
    pub fn len(&self) -> usize {
        self.angles.len()
    }

    /// Always false: construction rejects empty samples.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The sample rotated by `delta`.
    pub fn rotated(&self, delta: f64) -> Self {
        Self {
            angles: self.angles.iter().map(|a| a.rotated(delta)).collect(),
        }
    }
}

/// A point estimate together with diagnostics of the minimization that
/// produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateResult {
    /// The estimated location.
    pub value: Angle,
    /// Objective value at the estimate, for estimators defined through a
    /// minimization.
    pub objective: Option<f64>,
    /// Iterations used by iterative algorithms (zero for closed forms and
    /// exact enumerations).
    pub iterations: usize,
}

impl EstimateResult {
    pub(crate) fn exact(value: Angle, objective: Option<f64>) -> Self {
        Self {
            value,
            objective,
            iterations: 0,
        }
    }
}

/// A location estimator on the circle.
pub trait CircularEstimator: Send + Sync {
    /// Canonical registry name.
    fn name(&self) -> &'static str;

    /// Estimates the location from a sample.
    ///
    /// # Errors
    ///
    /// Estimator-specific degeneracies; see each implementation.
    fn estimate(&self, sample: &CircularSample) -> Result<EstimateResult, EstimatorError>;
}

/// Canonical names of the sample-only estimators, in conventional order.
pub const ESTIMATOR_NAMES: [&str; 5] = ["mean", "median", "l1", "spatial-median", "wilcoxon"];

/// Looks an estimator up by canonical name or alias.
///
/// Aliases: `e1..e5` for the conventional ordering above, plus `cm`
/// (median), `nsm` (spatial-median), and `cw` (wilcoxon).
///
/// # Errors
///
/// [`EstimatorError::UnknownEstimator`] for unrecognized names.
pub fn by_name(name: &str) -> Result<Box<dyn CircularEstimator>, EstimatorError> {
    match name.trim().to_ascii_lowercase().as_str() {
        "mean" | "e1" => Ok(Box::new(MeanDirection)),
        "median" | "cm" | "e2" => Ok(Box::new(CircularMedian)),
        "l1" | "e3" => Ok(Box::new(ChordalMedian)),
        "spatial-median" | "nsm" | "e4" => Ok(Box::new(SpatialMedianDirection)),
        "wilcoxon" | "cw" | "e5" => Ok(Box::new(WilcoxonMedian)),
        other => Err(EstimatorError::UnknownEstimator(other.to_string())),
    }
}
