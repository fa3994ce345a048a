//! Maximum-likelihood location estimators for the torus, sphere, and
//! cylinder models.

use super::{CircularSample, EstimatorError};
use crate::angle::{atan2pi, resultant_sums, Angle};

/// Resultants shorter than this leave a direction undefined.
const RESULTANT_EPS: f64 = 1e-12;

/// MLE of the common location shared by the components of a product model
/// whose `i`-th component is circular normal with concentration
/// `concentrations[i]`.
///
/// Maximizing the joint likelihood gives the direction of the
/// concentration-weighted sum of the per-component resultants.
///
/// # Errors
///
/// [`EstimatorError::DegenerateSample`] on component/concentration count
/// mismatch or non-positive concentrations;
/// [`EstimatorError::Undefined`] when the weighted resultant vanishes.
pub fn torus_location_mle(
    components: &[CircularSample],
    concentrations: &[f64],
) -> Result<Angle, EstimatorError> {
    if components.is_empty() {
        return Err(EstimatorError::EmptySample);
    }
    if components.len() != concentrations.len() {
        return Err(EstimatorError::DegenerateSample(format!(
            "{} components but {} concentrations",
            components.len(),
            concentrations.len()
        )));
    }
    let mut s = 0.0;
    let mut c = 0.0;
    for (sample, &kappa) in components.iter().zip(concentrations) {
        if !kappa.is_finite() || kappa <= 0.0 {
            return Err(EstimatorError::DegenerateSample(format!(
                "concentrations must be positive, got {kappa}"
            )));
        }
        let (si, ci) = resultant_sums(sample.angles());
        s += kappa * si;
        c += kappa * ci;
    }
    if (s * s + c * c).sqrt() < RESULTANT_EPS {
        return Err(EstimatorError::Undefined(
            crate::angle::GeometryError::UndefinedDirection,
        ));
    }
    Ok(atan2pi(s, c)?)
}

/// MLE of the mean longitude of a Fisher distribution on the sphere from
/// points `(colatitude θᵢ, longitude φᵢ)`, with the other parameters
/// unknown.
///
/// The likelihood depends on the longitude only through
/// `Σᵢ sin θᵢ cos(φᵢ - ν₂)`, so the MLE is the direction of
/// `(Σ sinθᵢ cosφᵢ, Σ sinθᵢ sinφᵢ)`.
///
/// # Errors
///
/// [`EstimatorError::EmptySample`] on empty input;
/// [`EstimatorError::Undefined`] when that resultant vanishes (all points on
/// the poles, or balanced longitudes).
pub fn sphere_longitude_mle(points: &[(f64, Angle)]) -> Result<Angle, EstimatorError> {
    if points.is_empty() {
        return Err(EstimatorError::EmptySample);
    }
    let mut s = 0.0;
    let mut c = 0.0;
    for &(theta, phi) in points {
        s += theta.sin() * phi.sin();
        c += theta.sin() * phi.cos();
    }
    if (s * s + c * c).sqrt() < RESULTANT_EPS {
        return Err(EstimatorError::Undefined(
            crate::angle::GeometryError::UndefinedDirection,
        ));
    }
    Ok(atan2pi(s, c)?)
}

/// MLE of the angular location `ν` entering the conditional mean of the
/// cylinder model, from joint points `(xᵢ, θᵢ)`.
///
/// With the conditional mean linear in `(cos θ, sin θ)`, profiling the
/// Gaussian likelihood reduces to least squares of `x` on those two
/// regressors; writing the fitted slope vector in polar form and adopting
/// the non-negative-dependence convention gives
/// `ν̂ = atan2(s₂(r₁₃ - r₂₃ r₁₂), s₃(r₁₂ - r₂₃ r₁₃))` where index 1 is `x`,
/// 2 is `cos θ`, 3 is `sin θ`, `r` are sample correlations and `s` sample
/// standard deviations.
///
/// # Errors
///
/// [`EstimatorError::DegenerateSample`] when fewer than three points are
/// given, when any of the three coordinates is (numerically) constant, or
/// when the fitted slope vector vanishes.
pub fn cylinder_location_mle(points: &[(f64, Angle)]) -> Result<Angle, EstimatorError> {
    let n = points.len();
    if n < 3 {
        return Err(EstimatorError::DegenerateSample(format!(
            "need at least 3 points to fit the cylinder location, got {n}"
        )));
    }
    let nf = n as f64;
    let mut mx = 0.0;
    let mut mc = 0.0;
    let mut ms = 0.0;
    for &(x, th) in points {
        mx += x / nf;
        mc += th.cos() / nf;
        ms += th.sin() / nf;
    }
    let (mut vxx, mut vcc, mut vss, mut vxc, mut vxs, mut vcs) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    for &(x, th) in points {
        let dx = x - mx;
        let dc = th.cos() - mc;
        let ds = th.sin() - ms;
        vxx += dx * dx;
        vcc += dc * dc;
        vss += ds * ds;
        vxc += dx * dc;
        vxs += dx * ds;
        vcs += dc * ds;
    }
    let s1 = (vxx / nf).sqrt();
    let s2 = (vcc / nf).sqrt();
    let s3 = (vss / nf).sqrt();
    if s1 < RESULTANT_EPS || s2 < RESULTANT_EPS || s3 < RESULTANT_EPS {
        return Err(EstimatorError::DegenerateSample(
            "a coordinate is constant; location not identifiable".into(),
        ));
    }
    let r12 = vxc / (nf * s1 * s2);
    let r13 = vxs / (nf * s1 * s3);
    let r23 = vcs / (nf * s2 * s3);
    let num = s2 * (r13 - r23 * r12);
    let den = s3 * (r12 - r23 * r13);
    if (num * num + den * den).sqrt() < RESULTANT_EPS {
        return Err(EstimatorError::DegenerateSample(
            "line coordinate uncorrelated with the angle; location not identifiable".into(),
        ));
    }
    Ok(atan2pi(num, den)?)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{PI, TAU};

    use approx::assert_abs_diff_eq;

    use super::*;
    use crate::dist::{FisherSphere, MardiaSutton};

    fn sample(values: &[f64]) -> CircularSample {
        CircularSample::new(values.iter().map(|&v| Angle::new(v)).collect()).unwrap()
    }

    #[test]
    fn torus_mle_weights_components_by_concentration() {
        // One tight component at 1.0, one loose at 2.0: the estimate leans
        // toward the tight one.
        let components = vec![sample(&[1.0, 1.05, 0.95]), sample(&[2.0, 2.1, 1.9])];
        let hat = torus_location_mle(&components, &[10.0, 1.0]).unwrap();
        assert!(hat.radians() > 1.0 && hat.radians() < 2.0);
        assert!(hat.radians() < 1.2, "should lean tight, got {hat}");

        // Equal concentrations degenerate to the pooled mean direction.
        let pooled = torus_location_mle(&components, &[2.0, 2.0]).unwrap();
        let all = sample(&[1.0, 1.05, 0.95, 2.0, 2.1, 1.9]);
        let (s, c) = resultant_sums(all.angles());
        assert_abs_diff_eq!(
            pooled.radians(),
            f64::atan2(s, c).rem_euclid(TAU),
            epsilon = 1e-12
        );
    }

    #[test]
    fn torus_mle_is_consistent() {
        use crate::dist::{CircularModel, CircularNormal};
        let nu = PI / 3.0;
        let kappas = [1.0, 3.0];
        let mut components = Vec::new();
        for (i, &kappa) in kappas.iter().enumerate() {
            let model = CircularNormal::new(Angle::new(nu), kappa).unwrap();
            components.push(CircularSample::new(model.sample_seeded(500, 31 + i as u64)).unwrap());
        }
        let hat = torus_location_mle(&components, &kappas).unwrap();
        assert_abs_diff_eq!(hat.radians(), nu, epsilon = 0.15);
    }

    #[test]
    fn torus_mle_validates_inputs() {
        let comps = vec![sample(&[1.0])];
        assert!(torus_location_mle(&[], &[]).is_err());
        assert!(torus_location_mle(&comps, &[1.0, 2.0]).is_err());
        assert!(torus_location_mle(&comps, &[0.0]).is_err());
        let balanced = vec![sample(&[0.0, PI])];
        assert!(matches!(
            torus_location_mle(&balanced, &[1.0]),
            Err(EstimatorError::Undefined(_))
        ));
    }

    #[test]
    fn sphere_longitude_mle_recovers_the_mean_longitude() {
        let model = FisherSphere::new(2.0, 1.0, Angle::new(2.0)).unwrap();
        let points = model.sample_seeded(2000, 41);
        let hat = sphere_longitude_mle(&points).unwrap();
        assert_abs_diff_eq!(hat.radians(), 2.0, epsilon = 0.05);

        // Hand-computable case: equatorial points at longitudes ±0.3.
        let small = vec![
            (PI / 2.0, Angle::new(0.3)),
            (PI / 2.0, Angle::new(TAU - 0.3)),
        ];
        assert_abs_diff_eq!(
            sphere_longitude_mle(&small).unwrap().radians(),
            0.0,
            epsilon = 1e-12
        );

        // Points at the poles carry no longitude information.
        let polar = vec![(0.0, Angle::new(1.0)), (PI, Angle::new(2.0))];
        assert!(matches!(
            sphere_longitude_mle(&polar),
            Err(EstimatorError::Undefined(_))
        ));
    }

    #[test]
    fn cylinder_mle_matches_profile_least_squares() {
        let truth = PI / 3.0;
        let model =
            MardiaSutton::new(Angle::new(1.0), 2.0, Angle::new(truth), 3.0, 1.5, 0.8).unwrap();
        let points = model.sample_seeded(2000, 43);
        let hat = cylinder_location_mle(&points).unwrap();
        assert_abs_diff_eq!(hat.radians(), truth, epsilon = 0.1);

        // Independent oracle: profile the residual sum of squares of
        // `x ~ a + b·cos(θ - ν)` over a ν grid with the slope constrained
        // non-negative, as the closed form assumes.
        let nf = points.len() as f64;
        let mx = points.iter().map(|&(x, _)| x).sum::<f64>() / nf;
        let var_x = points.iter().map(|&(x, _)| (x - mx).powi(2)).sum::<f64>() / nf;
        let mut best = (f64::INFINITY, 0.0f64);
        for k in 0..7200 {
            let nu = TAU * k as f64 / 7200.0;
            let mut mreg = 0.0;
            for &(_, th) in &points {
                mreg += (th.radians() - nu).cos() / nf;
            }
            let mut cov = 0.0;
            let mut var_r = 0.0;
            for &(x, th) in &points {
                let r = (th.radians() - nu).cos() - mreg;
                cov += (x - mx) * r / nf;
                var_r += r * r / nf;
            }
            let rss = if cov <= 0.0 || var_r < 1e-15 {
                var_x
            } else {
                var_x - cov * cov / var_r
            };
            if rss < best.0 {
                best = (rss, nu);
            }
        }
        assert_abs_diff_eq!(hat.radians(), best.1, epsilon = TAU / 7200.0 + 1e-9);
    }

    #[test]
    fn cylinder_mle_rejects_degenerate_samples() {
        assert!(matches!(
            cylinder_location_mle(&[(1.0, Angle::new(0.5)), (2.0, Angle::new(1.5))]),
            Err(EstimatorError::DegenerateSample(_))
        ));
        // Constant angle: cos θ has zero variance.
        let flat: Vec<(f64, Angle)> = (0..10).map(|i| (i as f64, Angle::new(1.0))).collect();
        assert!(matches!(
            cylinder_location_mle(&flat),
            Err(EstimatorError::DegenerateSample(_))
        ));
        // Constant line coordinate.
        let flat_x: Vec<(f64, Angle)> =
            (0..10).map(|i| (2.0, Angle::new(i as f64 * 0.6))).collect();
        assert!(matches!(
            cylinder_location_mle(&flat_x),
            Err(EstimatorError::DegenerateSample(_))
        ));
    }
}
