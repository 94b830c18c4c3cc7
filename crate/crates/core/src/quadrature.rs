//! Gauss–Legendre quadrature with adaptive bisection.
//!
//! The branch integrals of this crate are smooth once the endpoint
//! square-root singularity has been removed by the substitution
//! s = R_* − u², so nested Gauss rules converge fast. Nodes and weights are
//! generated once per order by Newton iteration on the Legendre polynomial.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Legendre nodes and weights on [-1, 1].
fn gauss_rule(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi-style initial guess, then Newton.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.push((x, w));
    }
    rule.sort_by(|a, b| a.0.total_cmp(&b.0));
    rule
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn rule_16() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_rule(16))
}

fn rule_32() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_rule(32))
}

fn gauss_segment<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rule: &[(f64, f64)]) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for &(x, w) in rule {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Fixed-order Gauss–Legendre on one segment; adequate when the caller
/// already controls the segment length.
pub fn gauss_fixed<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    gauss_segment(f, a, b, rule_16())
}

/// Adaptive Gauss–Legendre to a relative tolerance. Segments are bisected
/// until nested 16/32-point estimates agree within the budget allotted to
/// their share of the interval.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    if b <= a || b.is_nan() || a.is_nan() {
        return Err(Error::Domain(format!("integration bounds [{a}, {b}] are not increasing")));
    }
    let rough = gauss_segment(f, a, b, rule_32()).abs().max(1e-300);
    let mut total = 0.0;
    let mut stack = vec![(a, b)];
    let mut segments = 0usize;
    while let Some((lo, hi)) = stack.pop() {
        segments += 1;
        if segments > 100_000 {
            return Err(Error::NonConvergence(
                "adaptive quadrature exceeded its segment budget".into(),
            ));
        }
        let coarse = gauss_segment(f, lo, hi, rule_16());
        let fine = gauss_segment(f, lo, hi, rule_32());
        let budget = rel_tol * rough * ((hi - lo) / (b - a)).max(1e-6);
        if (fine - coarse).abs() <= budget || hi - lo < 1e-15 * (b - a) {
            total += fine;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid));
            stack.push((mid, hi));
        }
    }
    Ok(total)
}

/// Composite quadrature over tabulated samples on a (possibly nonuniform)
/// grid: local parabolas over pairs of intervals, trapezoid on a leftover
/// final interval. Fourth-order on smooth data.
pub fn integrate_samples(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n < 2 {
        return 0.0;
    }
    let mut acc = 0.0;
    let mut i = 0;
    while i + 2 < n {
        let (x0, x1, x2) = (xs[i], xs[i + 1], xs[i + 2]);
        let (y0, y1, y2) = (ys[i], ys[i + 1], ys[i + 2]);
        let h0 = x1 - x0;
        let h1 = x2 - x1;
        let h = h0 + h1;
        // Quadratic through the three samples, integrated over [x0, x2].
        acc += h / 6.0
            * ((2.0 - h1 / h0) * y0 + h * h / (h0 * h1) * y1 + (2.0 - h0 / h1) * y2);
        i += 2;
    }
    if i + 1 < n {
        acc += 0.5 * (xs[i + 1] - xs[i]) * (ys[i] + ys[i + 1]);
    }
    acc
}

/// Trapezoidal rule over tabulated samples.
pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let mut acc = 0.0;
    for i in 1..xs.len() {
        acc += 0.5 * (xs[i] - xs[i - 1]) * (ys[i] + ys[i - 1]);
    }
    acc
}
