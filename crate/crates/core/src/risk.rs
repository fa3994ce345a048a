//! Seeded Monte Carlo risk evaluation under the cosine loss.
//!
//! An [`ExperimentConfig`] names a sampling model, a list of estimators, an
//! optional location constraint, and a grid of true locations. For each grid
//! point the harness draws `replicates` independent samples — every
//! estimator sees the same draws, so risk differences are paired — and
//! reports the mean loss with its Monte Carlo standard error as a
//! [`RiskCurve`] per estimator. Replicate streams are derived from
//! `(seed, grid index, replicate index)` with a counter-based generator, so
//! grid points can be evaluated in parallel while the output stays
//! byte-identical for a given config regardless of thread count.

use std::f64::consts::{PI, TAU};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angle::{chord_metric, Angle, GeometryError};
use crate::arc::{Arc, ArcError};
use crate::dist::{DistError, DistributionSpec};
use crate::equivariant::{admissible_equivariant, reflect_estimate_circular_normal, EquivariantError};
use crate::estimators::{by_name, CircularEstimator, CircularSample, EstimatorError};
use crate::improve::{restricted_mle_circular_normal, ImproveError};

/// Retries allowed when an estimator is undefined on a drawn sample.
pub const MAX_REDRAWS: u64 = 100;

/// Multiplier for the standard-error brackets used by dominance verdicts.
pub const SE_SIGMAS: f64 = 3.0;

/// Tolerance for matching the location grids of two risk curves.
pub const GRID_EPS: f64 = 1e-9;

/// Errors from configuration, evaluation, or report assembly.
#[derive(Debug, Error)]
pub enum RiskError {
    /// The experiment configuration is unusable as stated.
    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),
    /// The estimator's hypotheses do not cover the configured model.
    #[error("estimator does not apply to this model: {0}")]
    ModelEstimatorMismatch(String),
    /// Risk curves to compare were computed on different location grids.
    #[error("risk curves are on different location grids")]
    GridMismatch,
    /// An estimator stayed undefined after the bounded number of redraws.
    #[error("estimator '{estimator}' undefined after {MAX_REDRAWS} redraws at nu={nu}")]
    TooManyRedraws {
        /// Canonical estimator name.
        estimator: String,
        /// Grid point at which the redraw budget ran out.
        nu: f64,
    },
    /// Malformed risk-curve CSV.
    #[error("malformed risk CSV: {0}")]
    Csv(String),
    /// Estimation failed for a reason other than a retryable degeneracy.
    #[error(transparent)]
    Estimator(#[from] EstimatorError),
    /// The distribution spec could not be built or sampled.
    #[error(transparent)]
    Dist(#[from] DistError),
    /// A restricted-estimator building block failed.
    #[error(transparent)]
    Improve(#[from] ImproveError),
    /// A symmetry-reduction building block failed.
    #[error(transparent)]
    Equivariant(#[from] EquivariantError),
    /// Arc manipulation failed.
    #[error(transparent)]
    Arc(#[from] ArcError),
    /// Direction extraction failed.
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Closed constraint interval `[lo, hi]` for the location, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSpec {
    /// Lower endpoint, in `[0, 2π)`.
    pub lo: f64,
    /// Upper endpoint, in `[lo, 2π)`.
    pub hi: f64,
}

impl ConstraintSpec {
    /// The constraint as a closed arc.
    pub fn arc(&self) -> Arc {
        Arc::segment(Angle::new(self.lo), Angle::new(self.hi))
    }

    /// Arc length `hi − lo`.
    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }
}

/// A Monte Carlo experiment: model, estimators, constraint, and grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Sampling model; its own location is overridden by each grid point.
    pub distribution: DistributionSpec,
    /// Estimator names resolvable by [`harness_estimator`].
    pub estimators: Vec<String>,
    /// Optional location constraint, required by `rml`, `project:*`, and
    /// `reflect:*`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega1: Option<ConstraintSpec>,
    /// True locations at which to evaluate the risk.
    pub nu_grid: Vec<f64>,
    /// Sample size per replicate.
    pub n: usize,
    /// Independent samples per grid point.
    pub replicates: u64,
    /// Base seed; replicate streams derive from it deterministically.
    pub seed: u64,
}

impl ExperimentConfig {
    /// Checks the structural invariants that no other layer re-checks.
    ///
    /// # Errors
    ///
    /// [`RiskError::InvalidConfig`] with a description of the first failure.
    pub fn validate(&self) -> Result<(), RiskError> {
        let fail = |msg: String| Err(RiskError::InvalidConfig(msg));
        if self.estimators.is_empty() {
            return fail("estimator list is empty".into());
        }
        if self.nu_grid.is_empty() {
            return fail("location grid is empty".into());
        }
        if self.n == 0 {
            return fail("sample size must be at least 1".into());
        }
        if self.replicates == 0 {
            return fail("replicate count must be at least 1".into());
        }
        for &nu in &self.nu_grid {
            if !nu.is_finite() {
                return fail(format!("location grid value {nu} is not finite"));
            }
        }
        if let Some(omega) = &self.omega1 {
            if !omega.lo.is_finite() || !omega.hi.is_finite() {
                return fail("constraint endpoints must be finite".into());
            }
            if !(0.0..TAU).contains(&omega.lo) || omega.hi < omega.lo || omega.hi >= TAU {
                return fail(format!(
                    "constraint endpoints must satisfy 0 <= lo <= hi < 2*pi, got [{}, {}]",
                    omega.lo, omega.hi
                ));
            }
            for &nu in &self.nu_grid {
                if nu < omega.lo - GRID_EPS || nu > omega.hi + GRID_EPS {
                    return fail(format!(
                        "grid location {nu} lies outside the constraint [{}, {}]",
                        omega.lo, omega.hi
                    ));
                }
            }
        }
        Ok(())
    }
}

/// One evaluated grid point of a risk curve.
#[derive(Debug, Clone, PartialEq)]
pub struct RiskPoint {
    /// True location.
    pub nu: f64,
    /// Mean loss over the replicates, in `[0, 2]`.
    pub risk: f64,
    /// Sample standard deviation of the losses divided by √replicates
    /// (zero when there is a single replicate).
    pub mc_se: f64,
    /// Samples redrawn because the estimator was undefined.
    pub redraws: u64,
}

/// Monte Carlo risk of one estimator over the location grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RiskCurve {
    /// Canonical estimator name.
    pub estimator: String,
    /// Replicates per grid point.
    pub replicates: u64,
    /// One entry per grid location, in grid order.
    pub points: Vec<RiskPoint>,
}

/// Cosine loss `1 − cos(truth − estimate)`, in `[0, 2]`.
pub fn loss(truth: Angle, estimate: Angle) -> f64 {
    chord_metric(truth, estimate)
}

/// An estimator as evaluated by the harness.
///
/// The harness composes the registry estimators with the restricted and
/// symmetry-reduced constructions:
///
/// - registry names (`mean`, `median`, `l1`, `spatial-median`, `wilcoxon`,
///   and their aliases) run as-is;
/// - `ad` runs the admissible rotation-equivariant rule (any circular
///   model);
/// - `rml` runs the restricted maximum-likelihood rule for the
///   circular-normal family: the mean direction projected onto the convex
///   closure of the constraint;
/// - `project:<base>` projects the base estimate onto the convex closure of
///   the constraint unconditionally — deliberately so, since the harness
///   exists to measure when that helps and when it hurts;
/// - `reflect:<base>` projects the base estimate onto the sample's reduced
///   arc under the reflection symmetry (circular-normal family with known
///   concentration; constraint no longer than π);
/// - `const:<radians>` always answers the same angle.
pub enum HarnessEstimator {
    /// A registry estimator.
    Classical(Box<dyn CircularEstimator>),
    /// The admissible rotation-equivariant rule.
    Admissible,
    /// Restricted maximum likelihood for the circular-normal family.
    RestrictedMle,
    /// Projection of a base estimator onto the constraint's convex closure.
    Projected(Box<HarnessEstimator>),
    /// Reflection-symmetry improvement of a base estimator.
    Reflected(Box<HarnessEstimator>),
    /// A constant answer.
    Constant(Angle),
}

impl std::fmt::Debug for HarnessEstimator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HarnessEstimator({})", self.name())
    }
}

impl HarnessEstimator {
    /// Canonical name, echoed in CSV output.
    pub fn name(&self) -> String {
        match self {
            HarnessEstimator::Classical(inner) => inner.name().to_string(),
            HarnessEstimator::Admissible => "ad".to_string(),
            HarnessEstimator::RestrictedMle => "rml".to_string(),
            HarnessEstimator::Projected(base) => format!("project:{}", base.name()),
            HarnessEstimator::Reflected(base) => format!("reflect:{}", base.name()),
            HarnessEstimator::Constant(value) => format!("const:{}", value.radians()),
        }
    }

    /// Whether this estimator (or any base under it) needs the constraint.
    fn needs_constraint(&self) -> bool {
        match self {
            HarnessEstimator::RestrictedMle => true,
            HarnessEstimator::Projected(_) | HarnessEstimator::Reflected(_) => true,
            HarnessEstimator::Classical(_)
            | HarnessEstimator::Admissible
            | HarnessEstimator::Constant(_) => false,
        }
    }

    /// Whether this estimator is specific to the circular-normal family.
    fn needs_circular_normal(&self) -> bool {
        match self {
            HarnessEstimator::RestrictedMle => true,
            HarnessEstimator::Reflected(_) => true,
            HarnessEstimator::Projected(base) => base.needs_circular_normal(),
            HarnessEstimator::Classical(_)
            | HarnessEstimator::Admissible
            | HarnessEstimator::Constant(_) => false,
        }
    }

    /// Whether this estimator uses the reflection reduction anywhere.
    fn uses_reflection(&self) -> bool {
        match self {
            HarnessEstimator::Reflected(_) => true,
            HarnessEstimator::Projected(base) => base.uses_reflection(),
            _ => false,
        }
    }
}

/// Resolves a harness estimator name.
///
/// # Errors
///
/// [`RiskError::InvalidConfig`] for an unparsable `const:` value, and
/// [`RiskError::Estimator`] for an unknown registry name.
pub fn harness_estimator(name: &str) -> Result<HarnessEstimator, RiskError> {
    let trimmed = name.trim();
    if let Some(rest) = trimmed.strip_prefix("project:") {
        return Ok(HarnessEstimator::Projected(Box::new(harness_estimator(
            rest,
        )?)));
    }
    if let Some(rest) = trimmed.strip_prefix("reflect:") {
        return Ok(HarnessEstimator::Reflected(Box::new(harness_estimator(
            rest,
        )?)));
    }
    if let Some(rest) = trimmed.strip_prefix("const:") {
        let value: f64 = rest.trim().parse().map_err(|_| {
            RiskError::InvalidConfig(format!("constant estimator angle '{rest}' is not a number"))
        })?;
        if !value.is_finite() {
            return Err(RiskError::InvalidConfig(
                "constant estimator angle must be finite".into(),
            ));
        }
        return Ok(HarnessEstimator::Constant(Angle::new(value)));
    }
    match trimmed.to_ascii_lowercase().as_str() {
        "ad" => Ok(HarnessEstimator::Admissible),
        "rml" => Ok(HarnessEstimator::RestrictedMle),
        other => Ok(HarnessEstimator::Classical(by_name(other)?)),
    }
}

/// Validated evaluation context: estimators plus everything they may
/// consult besides the sample.
struct Prepared {
    estimators: Vec<HarnessEstimator>,
    model: Box<dyn crate::dist::CircularModel>,
    /// Constraint arc, when configured.
    omega1: Option<Arc>,
    /// Convex closure of the constraint, precomputed.
    action: Option<Arc>,
    /// Known concentration when the model is circular-normal.
    kappa: Option<f64>,
    /// Constraint as `(lo, length)` for the reflection reduction, which
    /// works in coordinates where the constraint starts at zero.
    reflection_frame: Option<(f64, f64)>,
}

/// Builds the evaluation context, checking every estimator against the
/// model and constraint.
fn prepare(
    distribution: &DistributionSpec,
    estimator_names: &[String],
    omega1: Option<&ConstraintSpec>,
) -> Result<Prepared, RiskError> {
    let estimators: Vec<HarnessEstimator> = estimator_names
        .iter()
        .map(|name| harness_estimator(name))
        .collect::<Result<_, _>>()?;
    let model = distribution.build_circular()?;
    let kappa = match distribution {
        DistributionSpec::CircularNormal { kappa, .. } => Some(*kappa),
        _ => None,
    };
    for estimator in &estimators {
        if estimator.needs_constraint() && omega1.is_none() {
            return Err(RiskError::InvalidConfig(format!(
                "estimator '{}' requires a constraint (omega1)",
                estimator.name()
            )));
        }
        if estimator.needs_circular_normal() && kappa.is_none() {
            return Err(RiskError::ModelEstimatorMismatch(format!(
                "estimator '{}' is defined for the circular-normal family only",
                estimator.name()
            )));
        }
        if estimator.uses_reflection() {
            let omega = omega1.expect("checked above");
            if omega.length() <= 0.0 || omega.length() > PI {
                return Err(RiskError::InvalidConfig(format!(
                    "estimator '{}' requires a constraint no longer than pi, got length {}",
                    estimator.name(),
                    omega.length()
                )));
            }
        }
    }
    let arc = omega1.map(ConstraintSpec::arc);
    Ok(Prepared {
        estimators,
        model,
        action: arc.as_ref().map(Arc::convex_closure),
        omega1: arc,
        kappa,
        reflection_frame: omega1.map(|o| (o.lo, o.length())),
    })
}

/// Whether an estimator error means "this particular sample has no
/// estimate" (worth a redraw) rather than a configuration problem.
fn retryable(err: &EstimatorError) -> bool {
    matches!(
        err,
        EstimatorError::Undefined(_) | EstimatorError::DegenerateSpatialMedian
    )
}

/// Failures that a fresh sample can cure, as opposed to configuration or
/// numeric problems.
fn sample_curable(err: &RiskError) -> bool {
    match err {
        RiskError::Estimator(inner) => retryable(inner),
        RiskError::Improve(ImproveError::Estimator(inner)) => retryable(inner),
        RiskError::Equivariant(EquivariantError::UndefinedDirection) => true,
        _ => false,
    }
}

fn point_estimate(
    estimator: &HarnessEstimator,
    sample: &CircularSample,
    context: &Prepared,
) -> Result<Angle, RiskError> {
    match estimator {
        HarnessEstimator::Classical(inner) => Ok(inner.estimate(sample)?.value),
        HarnessEstimator::Admissible => {
            Ok(admissible_equivariant(context.model.as_ref(), sample)?)
        }
        HarnessEstimator::RestrictedMle => {
            let omega1 = context.omega1.as_ref().expect("validated: rml needs omega1");
            Ok(restricted_mle_circular_normal(sample, omega1)?)
        }
        HarnessEstimator::Projected(base) => {
            let value = point_estimate(base, sample, context)?;
            let action = context.action.as_ref().expect("validated: project needs omega1");
            Ok(action.project(value)?)
        }
        HarnessEstimator::Reflected(base) => {
            let value = point_estimate(base, sample, context)?;
            let (lo, length) = context
                .reflection_frame
                .expect("validated: reflect needs omega1");
            let kappa = context.kappa.expect("validated: reflect needs kappa");
            // Work in coordinates where the constraint starts at zero.
            let shifted_sample = sample.rotated(-lo);
            let improved =
                reflect_estimate_circular_normal(value.rotated(-lo), &shifted_sample, kappa, length);
            Ok(improved.rotated(lo))
        }
        HarnessEstimator::Constant(value) => Ok(*value),
    }
}

/// Point-estimation problem as it appears in JSON: a model, an optional
/// constraint, an estimator name, and an optional symmetry declaration.
///
/// The symmetry shorthand expands before evaluation: `"group": "G1"` names
/// the rotation group and requires `"estimator": "ad"`; `"group": "G3"`
/// names the reflection symmetry of the constraint `[0, b]` and wraps the
/// estimator in `reflect:` with that constraint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    /// Sampling model the estimator assumes.
    pub distribution: DistributionSpec,
    /// Optional location constraint.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega1: Option<ConstraintSpec>,
    /// Estimator name resolvable by [`harness_estimator`].
    pub estimator: String,
    /// Optional symmetry-group tag: `"G1"` (rotations) or `"G3"`
    /// (reflection about the midpoint of `[0, b]`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    /// Constraint length for `"group": "G3"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
}

impl ProblemSpec {
    /// Expands the symmetry shorthand into `(estimator name, constraint)`.
    fn normalized(&self) -> Result<(String, Option<ConstraintSpec>), RiskError> {
        match self.group.as_deref() {
            None => Ok((self.estimator.clone(), self.omega1)),
            Some("G1") => {
                if self.estimator != "ad" {
                    return Err(RiskError::InvalidConfig(format!(
                        "group G1 names the rotation-equivariant rule: estimator must be 'ad', got '{}'",
                        self.estimator
                    )));
                }
                Ok(("ad".into(), self.omega1))
            }
            Some("G3") => {
                let b = self.b.ok_or_else(|| {
                    RiskError::InvalidConfig("group G3 requires the constraint length b".into())
                })?;
                if !(b.is_finite() && b > 0.0 && b <= PI) {
                    return Err(RiskError::InvalidConfig(format!(
                        "group G3 requires b in (0, pi], got {b}"
                    )));
                }
                if let Some(omega) = &self.omega1 {
                    if omega.lo != 0.0 || (omega.hi - b).abs() > GRID_EPS {
                        return Err(RiskError::InvalidConfig(format!(
                            "group G3 with b={b} contradicts omega1=[{}, {}]",
                            omega.lo, omega.hi
                        )));
                    }
                }
                let name = if self.estimator.starts_with("reflect:") {
                    self.estimator.clone()
                } else {
                    format!("reflect:{}", self.estimator)
                };
                Ok((name, Some(ConstraintSpec { lo: 0.0, hi: b })))
            }
            Some(other) => Err(RiskError::InvalidConfig(format!(
                "unknown symmetry group '{other}' (expected G1 or G3)"
            ))),
        }
    }
}

/// Evaluates the problem's estimator on one concrete sample.
///
/// # Errors
///
/// Configuration problems as for [`risk_curves`]; estimation failures
/// (including an undefined direction on this particular sample) surface
/// directly.
pub fn problem_estimate(spec: &ProblemSpec, sample: &CircularSample) -> Result<Angle, RiskError> {
    let (name, omega1) = spec.normalized()?;
    let context = prepare(&spec.distribution, &[name], omega1.as_ref())?;
    point_estimate(&context.estimators[0], sample, &context)
}

/// Evaluates a context-free estimator (registry names and `const:`) on one
/// sample.
///
/// # Errors
///
/// [`RiskError::InvalidConfig`] when the name requires a model or
/// constraint (use [`problem_estimate`]); estimation failures surface
/// directly.
pub fn named_estimate(name: &str, sample: &CircularSample) -> Result<Angle, RiskError> {
    let estimator = harness_estimator(name)?;
    match &estimator {
        HarnessEstimator::Classical(inner) => Ok(inner.estimate(sample)?.value),
        HarnessEstimator::Constant(value) => Ok(*value),
        _ => Err(RiskError::InvalidConfig(format!(
            "estimator '{}' needs a model or constraint; describe the problem in JSON",
            estimator.name()
        ))),
    }
}

/// Per-estimator accumulator for one grid point.
struct PointStat {
    risk: f64,
    mc_se: f64,
    redraws: u64,
}

fn summarize(losses: &[f64]) -> (f64, f64) {
    let n = losses.len() as f64;
    let mean = losses.iter().sum::<f64>() / n;
    if losses.len() < 2 {
        return (mean, 0.0);
    }
    let var = losses
        .iter()
        .map(|&l| {
            let d = l - mean;
            d * d
        })
        .sum::<f64>()
        / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn evaluate_point(
    cfg: &ExperimentConfig,
    context: &Prepared,
    nu_index: usize,
) -> Result<Vec<PointStat>, RiskError> {
    let nu_raw = cfg.nu_grid[nu_index];
    let nu = Angle::new(nu_raw);
    let located = context.model.with_location(nu);
    let mut losses: Vec<Vec<f64>> = context
        .estimators
        .iter()
        .map(|_| Vec::with_capacity(cfg.replicates as usize))
        .collect();
    let mut redraws = vec![0u64; context.estimators.len()];
    let mut buf: Vec<Angle> = Vec::with_capacity(cfg.n);
    for replicate in 0..cfg.replicates {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(((nu_index as u64) << 40) | replicate);
        buf.clear();
        located.sample_into(&mut rng, cfg.n, &mut buf);
        let shared = CircularSample::new(buf.clone())?;
        for (j, estimator) in context.estimators.iter().enumerate() {
            // Estimators undefined on this draw retry on fresh draws from
            // the same replicate stream, up to MAX_REDRAWS.
            let mut current: Option<CircularSample> = None;
            let mut value = None;
            for _ in 0..=MAX_REDRAWS {
                let sample = current.as_ref().unwrap_or(&shared);
                match point_estimate(estimator, sample, context) {
                    Ok(v) => {
                        value = Some(v);
                        break;
                    }
                    Err(err) if sample_curable(&err) => {
                        redraws[j] += 1;
                        buf.clear();
                        located.sample_into(&mut rng, cfg.n, &mut buf);
                        current = Some(CircularSample::new(buf.clone())?);
                    }
                    Err(err) => return Err(err),
                }
            }
            let Some(value) = value else {
                return Err(RiskError::TooManyRedraws {
                    estimator: estimator.name(),
                    nu: nu_raw,
                });
            };
            losses[j].push(loss(nu, value));
        }
    }
    Ok(losses
        .iter()
        .zip(redraws)
        .map(|(l, r)| {
            let (risk, mc_se) = summarize(l);
            PointStat {
                risk,
                mc_se,
                redraws: r,
            }
        })
        .collect())
}

/// Thread count requested through the `CIRC_TRUNC_THREADS` variable, if any.
pub fn env_thread_count() -> Option<usize> {
    std::env::var("CIRC_TRUNC_THREADS")
        .ok()
        .and_then(|raw| raw.trim().parse::<usize>().ok())
        .filter(|&t| t >= 1)
}

/// Runs the experiment and returns one risk curve per configured estimator.
///
/// Thread count comes from `CIRC_TRUNC_THREADS` (default: all cores); the
/// output is identical for any thread count.
///
/// # Errors
///
/// Configuration problems ([`RiskError::InvalidConfig`],
/// [`RiskError::ModelEstimatorMismatch`], unknown estimators), sampling or
/// estimation failures, and [`RiskError::TooManyRedraws`].
pub fn risk_curves(cfg: &ExperimentConfig) -> Result<Vec<RiskCurve>, RiskError> {
    risk_curves_with_threads(cfg, env_thread_count())
}

/// [`risk_curves`] with an explicit thread count (`None` = library default).
///
/// # Errors
///
/// As for [`risk_curves`].
pub fn risk_curves_with_threads(
    cfg: &ExperimentConfig,
    threads: Option<usize>,
) -> Result<Vec<RiskCurve>, RiskError> {
    cfg.validate()?;
    let context = prepare(&cfg.distribution, &cfg.estimators, cfg.omega1.as_ref())?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|err| RiskError::InvalidConfig(format!("thread pool: {err}")))?;
    let per_point: Vec<Vec<PointStat>> = pool.install(|| {
        (0..cfg.nu_grid.len())
            .into_par_iter()
            .map(|nu_index| evaluate_point(cfg, &context, nu_index))
            .collect::<Result<_, _>>()
    })?;
    Ok(context
        .estimators
        .iter()
        .enumerate()
        .map(|(j, estimator)| RiskCurve {
            estimator: estimator.name(),
            replicates: cfg.replicates,
            points: per_point
                .iter()
                .enumerate()
                .map(|(i, stats)| {
                    let stat = &stats[j];
                    RiskPoint {
                        nu: cfg.nu_grid[i],
                        risk: stat.risk,
                        mc_se: stat.mc_se,
                        redraws: stat.redraws,
                    }
                })
                .collect(),
        })
        .collect())
}

/// Verdict of one grid point in a pairwise risk comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointVerdict {
    /// Challenger risk is lower by more than the standard-error bracket.
    Dominates,
    /// Challenger risk is higher by more than the bracket.
    Dominated,
    /// The difference is inside the bracket.
    Inconclusive,
}

/// Pairwise comparison of two risk curves on a shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PairComparison {
    /// Estimator whose improvement is being judged.
    pub challenger: String,
    /// Estimator it is measured against.
    pub baseline: String,
    /// Verdict per grid point, from the challenger's perspective.
    pub verdicts: Vec<PointVerdict>,
    /// Never significantly worse anywhere and strictly better somewhere.
    pub uniformly_dominates: bool,
    /// `100 · (baseline − challenger) / baseline` per grid point (zero when
    /// the baseline risk is zero).
    pub relative_improvement_pct: Vec<f64>,
}

/// Compares every ordered pair of distinct curves point by point.
///
/// A challenger *dominates* at a grid point when its risk is below the
/// baseline's by more than [`SE_SIGMAS`] combined standard errors, and
/// *uniformly dominates* when it is never significantly worse and strictly
/// better at one point at least.
///
/// # Errors
///
/// [`RiskError::GridMismatch`] unless all curves share one location grid
/// (within [`GRID_EPS`] per point).
pub fn dominance_report(curves: &[RiskCurve]) -> Result<Vec<PairComparison>, RiskError> {
    for pair in curves.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if a.points.len() != b.points.len() {
            return Err(RiskError::GridMismatch);
        }
        for (pa, pb) in a.points.iter().zip(&b.points) {
            if (pa.nu - pb.nu).abs() > GRID_EPS {
                return Err(RiskError::GridMismatch);
            }
        }
    }
    let mut report = Vec::new();
    for (i, challenger) in curves.iter().enumerate() {
        for (j, baseline) in curves.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut verdicts = Vec::with_capacity(challenger.points.len());
            let mut relative = Vec::with_capacity(challenger.points.len());
            for (pc, pb) in challenger.points.iter().zip(&baseline.points) {
                let bracket = SE_SIGMAS * pc.mc_se.hypot(pb.mc_se);
                let verdict = if pc.risk < pb.risk - bracket {
                    PointVerdict::Dominates
                } else if pc.risk > pb.risk + bracket {
                    PointVerdict::Dominated
                } else {
                    PointVerdict::Inconclusive
                };
                verdicts.push(verdict);
                relative.push(if pb.risk == 0.0 {
                    0.0
                } else {
                    100.0 * (pb.risk - pc.risk) / pb.risk
                });
            }
            let uniformly_dominates = !verdicts.contains(&PointVerdict::Dominated)
                && verdicts.contains(&PointVerdict::Dominates);
            report.push(PairComparison {
                challenger: challenger.estimator.clone(),
                baseline: baseline.estimator.clone(),
                verdicts,
                uniformly_dominates,
                relative_improvement_pct: relative,
            });
        }
    }
    Ok(report)
}

/// CSV header shared by [`render_csv`] and [`parse_csv`].
pub const CSV_HEADER: &str = "estimator,nu,risk,mc_se,replicates,redraws";

/// Renders risk curves as CSV (estimator-major, grid order within each).
pub fn render_csv(curves: &[RiskCurve]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for curve in curves {
        for point in &curve.points {
            out.push_str(&format!(
                "{},{:.10},{:.10},{:.10},{},{}\n",
                curve.estimator, point.nu, point.risk, point.mc_se, curve.replicates, point.redraws
            ));
        }
    }
    out
}

/// Parses CSV produced by [`render_csv`]. Empty lines and `#` comment lines
/// are skipped, so the per-bound blocks of the figure reproductions parse
/// directly.
///
/// # Errors
///
/// [`RiskError::Csv`] on any structural problem: wrong header, wrong field
/// count, unparsable numbers, inconsistent replicate counts within a curve,
/// or an estimator reappearing after its block ended.
pub fn parse_csv(text: &str) -> Result<Vec<RiskCurve>, RiskError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| RiskError::Csv("no header line".into()))?;
    if header != CSV_HEADER {
        return Err(RiskError::Csv(format!(
            "unexpected header '{header}', wanted '{CSV_HEADER}'"
        )));
    }
    let mut curves: Vec<RiskCurve> = Vec::new();
    for (idx, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(RiskError::Csv(format!(
                "row {}: expected 6 fields, got {}",
                idx + 1,
                fields.len()
            )));
        }
        let parse_f = |s: &str, what: &str| -> Result<f64, RiskError> {
            s.parse::<f64>()
                .map_err(|_| RiskError::Csv(format!("row {}: bad {what} '{s}'", idx + 1)))
        };
        let parse_u = |s: &str, what: &str| -> Result<u64, RiskError> {
            s.parse::<u64>()
                .map_err(|_| RiskError::Csv(format!("row {}: bad {what} '{s}'", idx + 1)))
        };
        let estimator = fields[0].to_string();
        let point = RiskPoint {
            nu: parse_f(fields[1], "nu")?,
            risk: parse_f(fields[2], "risk")?,
            mc_se: parse_f(fields[3], "mc_se")?,
            redraws: parse_u(fields[5], "redraws")?,
        };
        let replicates = parse_u(fields[4], "replicates")?;
        match curves.last_mut() {
            Some(last) if last.estimator == estimator => {
                if last.replicates != replicates {
                    return Err(RiskError::Csv(format!(
                        "row {}: replicate count changed within curve '{estimator}'",
                        idx + 1
                    )));
                }
                last.points.push(point);
            }
            _ => {
                if curves.iter().any(|c| c.estimator == estimator) {
                    return Err(RiskError::Csv(format!(
                        "row {}: curve '{estimator}' reappears after its block ended",
                        idx + 1
                    )));
                }
                curves.push(RiskCurve {
                    estimator,
                    replicates,
                    points: vec![point],
                });
            }
        }
    }
    if curves.is_empty() {
        return Err(RiskError::Csv("no data rows".into()));
    }
    Ok(curves)
}

/// Evenly spaced grid of `points` locations covering `[0, hi]`.
fn even_grid(hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|k| hi * k as f64 / (points - 1) as f64)
        .collect()
}

/// Pinned experiment reproducing the published counterexample: a two-faced
/// contamination of the circular-normal family (weight 0.1 on the location,
/// 0.9 on its antipode, κ = 1), n = 10, constraint `[0, π]`, comparing the
/// mean direction against its unconditional projection on an 11-point grid.
pub fn figure1_config() -> ExperimentConfig {
    ExperimentConfig {
        distribution: DistributionSpec::AntipodalMixture {
            base: Box::new(DistributionSpec::CircularNormal {
                nu: 0.0,
                kappa: 1.0,
            }),
            epsilon: 0.1,
        },
        estimators: vec!["mean".into(), "project:mean".into()],
        omega1: Some(ConstraintSpec { lo: 0.0, hi: PI }),
        nu_grid: even_grid(PI, 11),
        n: 10,
        replicates: 100_000,
        seed: 42,
    }
}

/// Constraint lengths swept by the second pinned experiment.
pub fn figure2_bounds() -> [f64; 4] {
    [PI / 6.0, PI / 2.0, 5.0 * PI / 6.0, PI]
}

/// Pinned experiment comparing the mean direction, the restricted
/// maximum-likelihood rule, and the reflection-symmetry improvement of the
/// mean for a circular-normal sample (n = 10, κ = 1) constrained to
/// `[0, bound]`, on an 11-point grid.
///
/// # Panics
///
/// Panics if `bound` is outside `(0, π]`.
pub fn figure2_config(bound: f64) -> ExperimentConfig {
    assert!(
        bound > 0.0 && bound <= PI,
        "constraint length must lie in (0, pi], got {bound}"
    );
    ExperimentConfig {
        distribution: DistributionSpec::CircularNormal {
            nu: 0.0,
            kappa: 1.0,
        },
        estimators: vec!["mean".into(), "rml".into(), "reflect:mean".into()],
        omega1: Some(ConstraintSpec {
            lo: 0.0,
            hi: bound,
        }),
        nu_grid: even_grid(bound, 11),
        n: 10,
        replicates: 100_000,
        seed: 42,
    }
}
