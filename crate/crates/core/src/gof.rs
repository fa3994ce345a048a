//! Kuiper goodness-of-fit tests.
//!
//! Kuiper's statistic `V = D⁺ + D⁻` is invariant to cyclic shifts of the
//! origin, which makes it the right omnibus test on the circle. P-values use
//! the standard asymptotic series with the small-sample correction factor
//! `√n + 0.155 + 0.24/√n`.

/// Kuiper statistic of `samples` against a continuous CDF.
///
/// # Panics
///
/// Panics if `samples` is empty.
pub fn kuiper_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    assert!(!samples.is_empty(), "need at least one sample");
    let mut xs: Vec<f64> = samples.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    let mut d_plus: f64 = 0.0;
    let mut d_minus: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let u = cdf(x);
        d_plus = d_plus.max((i as f64 + 1.0) / n - u);
        d_minus = d_minus.max(u - i as f64 / n);
    }
    d_plus + d_minus
}

/// Two-sample Kuiper statistic: `max(F₁ - F₂) + max(F₂ - F₁)` over the pooled
/// sample, where `Fᵢ` are the empirical CDFs.
///
/// # Panics
///
/// Panics if either sample is empty.
pub fn kuiper_two_sample(a: &[f64], b: &[f64]) -> f64 {
    assert!(!a.is_empty() && !b.is_empty(), "need nonempty samples");
    let mut xs: Vec<f64> = a.to_vec();
    let mut ys: Vec<f64> = b.to_vec();
    xs.sort_by(|p, q| p.partial_cmp(q).unwrap());
    ys.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d_plus: f64 = 0.0;
    let mut d_minus: f64 = 0.0;
    while i < xs.len() || j < ys.len() {
        let advance_a = match (xs.get(i), ys.get(j)) {
            (Some(x), Some(y)) => x <= y,
            (Some(_), None) => true,
            _ => false,
        };
        if advance_a {
            i += 1;
        } else {
            j += 1;
        }
        let diff = i as f64 / na - j as f64 / nb;
        d_plus = d_plus.max(diff);
        d_minus = d_minus.max(-diff);
    }
    d_plus + d_minus
}

/// Asymptotic upper-tail probability of the Kuiper statistic `v` for an
/// effective sample size `n_eff` (use `n` one-sample, `n₁n₂/(n₁+n₂)`
/// two-sample). Clamped to `[0, 1]`.
pub fn kuiper_p_value(v: f64, n_eff: f64) -> f64 {
    let lambda = (n_eff.sqrt() + 0.155 + 0.24 / n_eff.sqrt()) * v;
    if lambda < 0.4 {
        // The series needs many terms here but the probability is 1 anyway.
        return 1.0;
    }
    let mut sum = 0.0;
    for j in 1..=100 {
        let jf = j as f64;
        let a = 2.0 * jf * jf * lambda * lambda;
        let term = 2.0 * (2.0 * a - 1.0) * (-a).exp();
        sum += term;
        if term.abs() < 1e-12 {
            break;
        }
    }
    sum.clamp(0.0, 1.0)
}

/// Critical value of the Kuiper statistic at significance `alpha` for the
/// given effective sample size (bisection on the asymptotic p-value).
pub fn kuiper_critical_value(n_eff: f64, alpha: f64) -> f64 {
    assert!((0.0..1.0).contains(&alpha) && alpha > 0.0);
    let (mut lo, mut hi) = (0.0_f64, 4.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if kuiper_p_value(mid, n_eff) > alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
