//! Risk improvement on restricted parameter arcs: sufficient conditions
//! under which projecting an equivariant estimate onto the (closure of the)
//! parameter arc cannot increase — and somewhere strictly decreases — its
//! expected cosine loss, plus the closed-form restricted MLE for the
//! circular normal family and the folding trick that turns multimodal
//! location problems into restricted ones.

use std::f64::consts::{PI, TAU};

use thiserror::Error;

use crate::angle::Angle;
use crate::arc::{Arc, ArcError};
use crate::dist::{zeta_range, CircularModel, DistError, ShapeCertificate};
use crate::estimators::{CircularSample, EstimatorError, MeanDirection};

/// Slack applied to the arc-length comparisons so that arcs constructed to
/// sit exactly on a boundary (e.g. length 2π/3 assembled from thirds of π)
/// are not rejected over the last bit.
const LENGTH_EPS: f64 = 1e-12;

/// The sufficient condition under which projection improves risk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImprovementCondition {
    /// The action arc is no longer than 2π/3; no distributional assumption
    /// is needed.
    ShortArc,
    /// The action arc is no longer than π and every density involved is
    /// symmetric and unimodal about the location.
    SymmetricUnimodal,
    /// The action arc is no longer than π and the density is an antipodal
    /// mixture with weight at least 1/2 on the in-arc component and a
    /// nondecreasing slope ratio.
    SymmetricMixture,
}

/// Outcome of a projection improvement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Improvement {
    /// The projected estimate.
    pub value: Angle,
    /// The condition that licensed the projection, when one held.
    pub condition: Option<ImprovementCondition>,
    /// True when no condition held and the projection was forced; such a
    /// value carries no risk guarantee.
    pub forced: bool,
}

/// Errors from the improvement machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ImproveError {
    /// No sufficient condition held and the caller did not force.
    #[error("no improvement condition holds: {0}")]
    ConditionsNotMet(String),
    /// The parameter arc was unusable (empty, or not closed where a
    /// projection is required).
    #[error(transparent)]
    Arc(#[from] ArcError),
    /// Distribution evaluation failed during the condition check.
    #[error(transparent)]
    Dist(#[from] DistError),
    /// Estimation inside a convenience wrapper failed.
    #[error(transparent)]
    Estimator(#[from] EstimatorError),
    /// A parameter was outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// The action arc for a parameter arc: its convex closure.
///
/// # Errors
///
/// [`ArcError::EmptyArc`] when the parameter arc is empty.
pub fn action_arc(omega1: &Arc) -> Result<Arc, ImproveError> {
    if omega1.is_empty_set() {
        return Err(ImproveError::Arc(ArcError::EmptyArc));
    }
    Ok(omega1.convex_closure())
}

/// Checks which sufficient condition (if any) licenses projection onto the
/// action arc for a single circular observation model.
///
/// # Errors
///
/// Propagates empty-arc and slope-ratio failures. A missing condition is
/// `Ok(None)`, not an error.
pub fn check_conditions(
    model: &dyn CircularModel,
    omega1: &Arc,
) -> Result<Option<ImprovementCondition>, ImproveError> {
    let action = action_arc(omega1)?;
    if action.is_full() {
        return Ok(None);
    }
    let len = action.length();
    if len <= TAU / 3.0 + LENGTH_EPS {
        return Ok(Some(ImprovementCondition::ShortArc));
    }
    if len <= PI + LENGTH_EPS {
        match model.shape() {
            ShapeCertificate::SymmetricUnimodal => {
                return Ok(Some(ImprovementCondition::SymmetricUnimodal))
            }
            ShapeCertificate::SymmetricMixture { epsilon } => {
                if epsilon >= 0.5 {
                    let (_, _, nondecreasing) = zeta_range(model)?;
                    if nondecreasing {
                        return Ok(Some(ImprovementCondition::SymmetricMixture));
                    }
                }
            }
            ShapeCertificate::Unknown => {}
        }
    }
    Ok(None)
}

/// Condition check for a product model: one location shared by independent
/// circular components.
///
/// The short-arc condition is shape-free; the half-circle condition needs
/// every component to certify symmetric unimodality.
///
/// # Errors
///
/// Empty-arc and empty-component-list failures.
pub fn check_conditions_product(
    components: &[Box<dyn CircularModel>],
    omega1: &Arc,
) -> Result<Option<ImprovementCondition>, ImproveError> {
    if components.is_empty() {
        return Err(ImproveError::InvalidParameter(
            "product model needs at least one component".into(),
        ));
    }
    let action = action_arc(omega1)?;
    if action.is_full() {
        return Ok(None);
    }
    let len = action.length();
    if len <= TAU / 3.0 + LENGTH_EPS {
        return Ok(Some(ImprovementCondition::ShortArc));
    }
    if len <= PI + LENGTH_EPS
        && components
            .iter()
            .all(|m| m.shape() == ShapeCertificate::SymmetricUnimodal)
    {
        return Ok(Some(ImprovementCondition::SymmetricUnimodal));
    }
    Ok(None)
}

/// Projects `estimate` onto the action arc, guarded by the sufficient
/// conditions.
///
/// With `force = true` the projection is carried out even when no condition
/// holds; the result is then flagged [`Improvement::forced`] and carries no
/// risk guarantee (projection can strictly worsen risk on long arcs).
///
/// # Errors
///
/// [`ImproveError::ConditionsNotMet`] when unforced and no condition holds,
/// plus arc/distribution failures from the check and the projection itself.
pub fn improve_by_projection(
    model: &dyn CircularModel,
    estimate: Angle,
    omega1: &Arc,
    force: bool,
) -> Result<Improvement, ImproveError> {
    let condition = check_conditions(model, omega1)?;
    project_with_condition(estimate, omega1, condition, force)
}

/// Product-model variant of [`improve_by_projection`].
///
/// # Errors
///
/// As [`improve_by_projection`].
pub fn improve_by_projection_product(
    components: &[Box<dyn CircularModel>],
    estimate: Angle,
    omega1: &Arc,
    force: bool,
) -> Result<Improvement, ImproveError> {
    let condition = check_conditions_product(components, omega1)?;
    project_with_condition(estimate, omega1, condition, force)
}

fn project_with_condition(
    estimate: Angle,
    omega1: &Arc,
    condition: Option<ImprovementCondition>,
    force: bool,
) -> Result<Improvement, ImproveError> {
    if condition.is_none() && !force {
        return Err(ImproveError::ConditionsNotMet(format!(
            "action arc has length {:.6} and the model certifies no applicable shape",
            action_arc(omega1)?.length()
        )));
    }
    let value = action_arc(omega1)?.project(estimate)?;
    Ok(Improvement {
        value,
        condition,
        forced: condition.is_none(),
    })
}

/// Restricted MLE of a circular-normal location over a closed parameter
/// arc: the unrestricted MLE is the sample mean direction, and concavity of
/// the cosine likelihood makes the restricted MLE its projection onto the
/// arc (interior points map to themselves; outside, the likelihood decides
/// by which endpoint is closer, with the exact far-side tie going to the
/// arc's low endpoint).
///
/// # Errors
///
/// Mean-direction degeneracies ([`EstimatorError`]) and arc failures (the
/// arc must be nonempty and closed).
pub fn restricted_mle_circular_normal(
    sample: &CircularSample,
    omega1: &Arc,
) -> Result<Angle, ImproveError> {
    use crate::estimators::CircularEstimator;
    let mean = MeanDirection.estimate(sample)?.value;
    Ok(action_arc(omega1)?.project(mean)?)
}

/// Folds a sample from a `k`-fold rotationally symmetric density into the
/// single-mode space: each angle is multiplied by `k` modulo 2π.
///
/// A location `ν₀` identifiable only within `[0, 2π/k)` becomes the
/// ordinary location `k·ν₀` of the folded sample; estimate there and map
/// back with [`unfold_location`]. For `k ≥ 3` the identifiable sector is
/// shorter than 2π/3, so the short-arc projection condition holds
/// automatically.
///
/// # Errors
///
/// [`ImproveError::InvalidParameter`] when `k = 0`.
pub fn fold_sample(sample: &CircularSample, k: u32) -> Result<CircularSample, ImproveError> {
    if k == 0 {
        return Err(ImproveError::InvalidParameter(
            "fold order k must be at least 1".into(),
        ));
    }
    let folded = sample
        .angles()
        .iter()
        .map(|th| Angle::new((k as f64 * th.radians()).rem_euclid(TAU)))
        .collect();
    Ok(CircularSample::new(folded)?)
}

/// Maps a location estimated in the folded space back to the identifiable
/// sector `[0, 2π/k)`.
pub fn unfold_location(folded: Angle, k: u32) -> Angle {
    Angle::new(folded.radians() / k.max(1) as f64)
}
