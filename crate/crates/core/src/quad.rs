//! Quadrature over one period of the circle.
//!
//! Smooth periodic integrands make the plain trapezoid (= midpoint) rule
//! spectrally accurate, so everything here is built from equispaced sums over
//! `[0, 2π)` with interval doubling for an error estimate.

use std::f64::consts::TAU;

/// Equispaced `n`-point rule for `∫₀^{2π} f` (exact trapezoid rule for
/// periodic `f`).
pub fn periodic_integral(f: impl Fn(f64) -> f64, n: usize) -> f64 {
    assert!(n > 0);
    let h = TAU / n as f64;
    let mut sum = 0.0;
    for k in 0..n {
        sum += f(k as f64 * h);
    }
    sum * h
}

/// Doubling refinement of [`periodic_integral`] until two successive
/// estimates differ by at most `tol` (absolute). Starts at 512 points and
/// gives up (returning the last estimate) at 2²⁰ points.
pub fn periodic_integral_adaptive(f: impl Fn(f64) -> f64, tol: f64) -> f64 {
    let mut n: usize = 512;
    let mut prev = periodic_integral(&f, n);
    while n < (1 << 20) {
        // Only the new midpoints need evaluating.
        let h = TAU / (2 * n) as f64;
        let mut odd = 0.0;
        for k in 0..n {
            odd += f((2 * k + 1) as f64 * h);
        }
        let next = prev / 2.0 + odd * h;
        n *= 2;
        if (next - prev).abs() <= tol {
            return next;
        }
        prev = next;
    }
    prev
}

/// Cumulative distribution table of a density on `[0, 2π)`.
///
/// Returns `n + 1` values of the trapezoid cumulative integral at the grid
/// `k · 2π / n`, rescaled so the final entry is exactly 1. The input density
/// need not be normalized.
pub fn cdf_table(density: impl Fn(f64) -> f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let h = TAU / n as f64;
    let mut values = Vec::with_capacity(n + 1);
    let mut prev = density(0.0);
    let mut acc = 0.0;
    values.push(0.0);
    for k in 1..=n {
        let x = k as f64 * h;
        let cur = density(x);
        acc += 0.5 * (prev + cur) * h;
        values.push(acc);
        prev = cur;
    }
    let total = *values.last().unwrap();
    assert!(total > 0.0, "density integrates to zero");
    for v in &mut values {
        *v /= total;
    }
    values
}

/// Evaluate a [`cdf_table`] at `x ∈ [0, 2π)` by linear interpolation.
pub fn cdf_eval(table: &[f64], x: f64) -> f64 {
    let n = table.len() - 1;
    let t = (x / TAU * n as f64).clamp(0.0, n as f64);
    let idx = (t as usize).min(n - 1);
    let frac = t - idx as f64;
    table[idx] + (table[idx + 1] - table[idx]) * frac
}

/// Invert a [`cdf_table`] at probability `u ∈ [0, 1]` by binary search plus
/// linear interpolation; returns a point in `[0, 2π)`.
pub fn cdf_invert(table: &[f64], u: f64) -> f64 {
    let n = table.len() - 1;
    let u = u.clamp(0.0, 1.0);
    // Last index with table[idx] <= u.
    let mut lo = 0usize;
    let mut hi = n;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if table[mid] <= u {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let span = table[hi] - table[lo];
    let frac = if span > 0.0 { (u - table[lo]) / span } else { 0.0 };
    let x = (lo as f64 + frac) * TAU / n as f64;
    if x >= TAU {
        0.0
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn integrates_constants_and_harmonics() {
        let c = periodic_integral(|_| 1.0, 512);
        assert!((c - TAU).abs() < 1e-12);
        // Harmonics integrate to zero exactly on equispaced grids.
        let s = periodic_integral(|x| (3.0 * x).sin() + (5.0 * x).cos(), 512);
        assert!(s.abs() < 1e-12);
    }

    #[test]
    fn adaptive_matches_sharp_peak() {
        // A concentrated exponential-of-cosine integrand.
        let kappa = 20.0;
        let val = periodic_integral_adaptive(|x| (kappa * x.cos()).exp(), 1e-10);
        let reference = periodic_integral(|x| (kappa * x.cos()).exp(), 1 << 16);
        assert!(((val - reference) / reference).abs() < 1e-12);
    }

    #[test]
    fn cdf_table_round_trips() {
        // Cardioid-like density.
        let dens = |x: f64| (1.0 + 0.8 * x.cos()) / TAU;
        let table = cdf_table(dens, 1 << 12);
        assert_eq!(table[0], 0.0);
        assert!((table[table.len() - 1] - 1.0).abs() < 1e-15);
        // Invert then evaluate.
        for &u in &[0.0, 0.1, 0.25, 0.5, 0.77, 0.99] {
            let x = cdf_invert(&table, u);
            assert!((cdf_eval(&table, x) - u).abs() < 1e-6, "u={u}");
        }
        // Midpoint of a symmetric density about 0 is at π.
        assert!((cdf_invert(&table, 0.5) - PI).abs() < 1e-6);
    }
}
