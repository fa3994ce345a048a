//! The five classical location estimators.
//!
//! The median-type estimators minimize objectives that are piecewise linear
//! or piecewise concave in the candidate angle, so each minimum is attained
//! on a finite kink set and is found by exact enumeration: no grids, no
//! iteration. Ties are broken toward the numerically smallest angle in
//! `[0, 2π)`.

use std::f64::consts::PI;

use super::{CircularEstimator, CircularSample, EstimateResult, EstimatorError};
use crate::angle::{arc_metric, atan2pi, resultant_sums, Angle, GeometryError};

/// Objective values within this of each other count as tied.
const TIE_EPS: f64 = 1e-12;
/// Resultants shorter than this leave the mean direction undefined.
const RESULTANT_EPS: f64 = 1e-12;

/// Picks the candidate with the smallest objective, breaking ties toward
/// the smallest angle.
fn argmin_candidates(
    candidates: impl IntoIterator<Item = Angle>,
    objective: impl Fn(Angle) -> f64,
) -> (Angle, f64) {
    let mut best: Option<(Angle, f64)> = None;
    for cand in candidates {
        let value = objective(cand);
        best = match best {
            None => Some((cand, value)),
            Some((ba, bv)) => {
                if value < bv - TIE_EPS || ((value - bv).abs() <= TIE_EPS && cand < ba) {
                    Some((cand, value))
                } else {
                    Some((ba, bv))
                }
            }
        };
    }
    best.expect("candidate set is nonempty")
}

/// Sample mean direction: the direction of the vector resultant.
#[derive(Debug, Clone, Copy, Default)]
pub struct MeanDirection;

impl CircularEstimator for MeanDirection {
    fn name(&self) -> &'static str {
        "mean"
    }

    /// # Errors
    ///
    /// [`EstimatorError::Undefined`] when the resultant length falls below
    /// `1e-12` (perfectly balanced samples).
    fn estimate(&self, sample: &CircularSample) -> Result<EstimateResult, EstimatorError> {
        let (s, c) = resultant_sums(sample.angles());
        if (s * s + c * c).sqrt() < RESULTANT_EPS {
            return Err(EstimatorError::Undefined(GeometryError::UndefinedDirection));
        }
        let value = atan2pi(s, c)?;
        Ok(EstimateResult::exact(value, None))
    }
}

/// Circular median: minimizes the summed arc distance
/// `Σᵢ (π - |π - |θᵢ - α||)`.
///
/// The objective is piecewise linear with kinks at the observations and
/// their antipodes, so those `2n` angles are an exact candidate set.
#[derive(Debug, Clone, Copy, Default)]
pub struct CircularMedian;

impl CircularEstimator for CircularMedian {
    fn name(&self) -> &'static str {
        "median"
    }

    fn estimate(&self, sample: &CircularSample) -> Result<EstimateResult, EstimatorError> {
        let angles = sample.angles();
        let candidates = angles
            .iter()
            .flat_map(|&th| [th, th.antipode()])
            .collect::<Vec<_>>();
        let (value, objective) = argmin_candidates(candidates, |alpha| {
            angles.iter().map(|&th| arc_metric(th, alpha)).sum()
        });
        Ok(EstimateResult::exact(value, Some(objective)))
    }
}

/// Chordal median: minimizes the summed straight-line chord length
/// `Σᵢ 2|sin((θᵢ - α)/2)|`.
///
/// Between consecutive observations each term is concave in `α`, so the sum
/// is concave there and every minimum sits on an observation: the sample
/// itself is an exact candidate set.
#[derive(Debug, Clone, Copy, Default)]
pub struct ChordalMedian;

impl CircularEstimator for ChordalMedian {
    fn name(&self) -> &'static str {
        "l1"
    }

    fn estimate(&self, sample: &CircularSample) -> Result<EstimateResult, EstimatorError> {
        let angles = sample.angles();
        let (value, objective) = argmin_candidates(angles.iter().copied(), |alpha| {
            angles
                .iter()
                .map(|&th| 2.0 * ((th.radians() - alpha.radians()) / 2.0).sin().abs())
                .sum()
        });
        Ok(EstimateResult::exact(value, Some(objective)))
    }
}

/// Direction of the planar spatial median of the observations embedded as
/// unit vectors; computed by damped Weiszfeld iteration.
#[derive(Debug, Clone, Copy, Default)]
pub struct SpatialMedianDirection;

/// Convergence threshold on the Weiszfeld step length.
const WEISZFELD_STEP_EPS: f64 = 1e-12;
/// Nudge applied when an iterate collides with a data point.
const WEISZFELD_NUDGE: f64 = 1e-9;
/// Iteration budget.
const WEISZFELD_MAX_ITER: usize = 10_000;
/// Below this norm the minimizing point has no usable direction.
const CENTER_EPS: f64 = 1e-10;

impl CircularEstimator for SpatialMedianDirection {
    fn name(&self) -> &'static str {
        "spatial-median"
    }

    /// # Errors
    ///
    /// [`EstimatorError::DegenerateSpatialMedian`] when the minimizing point
    /// lies within `1e-10` of the center.
    fn estimate(&self, sample: &CircularSample) -> Result<EstimateResult, EstimatorError> {
        let xs: Vec<[f64; 2]> = sample
            .angles()
            .iter()
            .map(|th| {
                let (s, c) = th.sin_cos();
                [c, s]
            })
            .collect();
        let n = xs.len() as f64;
        let mut a = xs.iter().fold([0.0f64; 2], |acc, x| {
            [acc[0] + x[0] / n, acc[1] + x[1] / n]
        });
        let mut iterations = 0;
        for _ in 0..WEISZFELD_MAX_ITER {
            iterations += 1;
            if xs
                .iter()
                .any(|x| ((a[0] - x[0]).powi(2) + (a[1] - x[1]).powi(2)).sqrt() < TIE_EPS)
            {
                a[0] += WEISZFELD_NUDGE;
                a[1] += WEISZFELD_NUDGE;
            }
            let mut num = [0.0f64; 2];
            let mut den = 0.0f64;
            for x in &xs {
                let d = ((a[0] - x[0]).powi(2) + (a[1] - x[1]).powi(2)).sqrt();
                let w = 1.0 / d;
                num[0] += w * x[0];
                num[1] += w * x[1];
                den += w;
            }
            let next = [num[0] / den, num[1] / den];
            let step = ((next[0] - a[0]).powi(2) + (next[1] - a[1]).powi(2)).sqrt();
            a = next;
            if step < WEISZFELD_STEP_EPS {
                break;
            }
        }
        if (a[0] * a[0] + a[1] * a[1]).sqrt() < CENTER_EPS {
            return Err(EstimatorError::DegenerateSpatialMedian);
        }
        let objective = xs
            .iter()
            .map(|x| ((a[0] - x[0]).powi(2) + (a[1] - x[1]).powi(2)).sqrt())
            .sum();
        let value = atan2pi(a[1], a[0])?;
        Ok(EstimateResult {
            value,
            objective: Some(objective),
            iterations,
        })
    }
}

/// Rank-weighted median: minimizes `Σᵢ Rᵢ(α)·dᵢ(α)` where `dᵢ` is the arc
/// distance to `α` and `Rᵢ` its (average) rank among the distances.
///
/// The objective is piecewise linear; its kinks are the observations, their
/// antipodes, and the pairwise circular midpoints (where two distances — and
/// hence their ranks — swap) together with the midpoints' antipodes. Those
/// `n² + n` angles form an exact candidate set.
#[derive(Debug, Clone, Copy, Default)]
pub struct WilcoxonMedian;

/// Rank-weighted arc-distance objective with average ranks for ties.
fn rank_weighted_objective(angles: &[Angle], alpha: Angle) -> f64 {
    let mut dist: Vec<f64> = angles.iter().map(|&th| arc_metric(th, alpha)).collect();
    dist.sort_unstable_by(|a, b| a.total_cmp(b));
    let mut total = 0.0;
    let mut i = 0;
    while i < dist.len() {
        let mut j = i;
        while j + 1 < dist.len() && dist[j + 1] - dist[i] <= TIE_EPS {
            j += 1;
        }
        // Average 1-based rank of the tied block [i, j].
        let avg_rank = (i + j + 2) as f64 / 2.0;
        for d in &dist[i..=j] {
            total += avg_rank * d;
        }
        i = j + 1;
    }
    total
}

impl CircularEstimator for WilcoxonMedian {
    fn name(&self) -> &'static str {
        "wilcoxon"
    }

    fn estimate(&self, sample: &CircularSample) -> Result<EstimateResult, EstimatorError> {
        let angles = sample.angles();
        let mut candidates = Vec::with_capacity(angles.len() * (angles.len() + 1));
        for (i, &a) in angles.iter().enumerate() {
            candidates.push(a);
            candidates.push(a.antipode());
            for &b in &angles[i + 1..] {
                let mid = a.rotated((b.radians() - a.radians()).rem_euclid(2.0 * PI) / 2.0);
                candidates.push(mid);
                candidates.push(mid.antipode());
            }
        }
        let (value, objective) =
            argmin_candidates(candidates, |alpha| rank_weighted_objective(angles, alpha));
        Ok(EstimateResult::exact(value, Some(objective)))
    }
}
