//! The ground-state profile branch ω ↦ R_ω and the mass curve λ(ω).
//!
//! Multiplying the profile equation R'' = G'(R) + ωR by R' and integrating
//! from the peak gives the first integral (R')² = W(R) with
//! W(s) = ωs² + 2G(s); W vanishes simply at s = R_*(ω) because
//! V'(R_*) > 0. Everything here is built on that identity:
//!
//! * the quadrature solver inverts x(s) = ∫_s^{R_*} dt/√W(t), with the
//!   substitution s = R_* − u² absorbing the square-root endpoint;
//! * mass and energy are single integrals
//!   λ(ω) = 2∫₀^{R_*} s²/√W ds and E(ω) = 2∫₀^{R_*} (½ωs² + 2G)/√W ds,
//!   both regular in the u variable;
//! * the shooting solver integrates the second-order equation with an
//!   adaptive Dormand–Prince step and reports the drift of (R')² − W(R).
//!
//! The slope dλ/dω is taken by central differences; the branch
//! relations dE/dλ = −ω/2 and the slope-sign law under (G3) ∧ (G5) are
//! exercised by the test suites.

use crate::criteria::{self, SupV};
use crate::error::{Error, Result};
use crate::nonlinearity::Nonlinearity;
use crate::quadrature::{gauss_fixed, integrate, integrate_samples};

/// How to compute a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Quadrature,
    Shooting,
}

/// Resolution knobs for `solve_profile`.
#[derive(Debug, Clone, Copy)]
pub struct ProfileConfig {
    /// Stop once R drops below this fraction of R_*.
    pub tail_cut: f64,
    /// Shooting horizon in units of 1/√ω.
    pub x_max_factor: f64,
    /// Relative tolerance of the adaptive shooting step.
    pub rtol: f64,
    /// Cap on the shooting step in units of 1/√ω; also controls the grid
    /// density available to the sampled integrals.
    pub max_step: f64,
    /// Quadrature nodes on the peak region (u-substituted).
    pub peak_nodes: usize,
    /// Quadrature nodes on the logarithmic tail.
    pub tail_nodes: usize,
}

impl Default for ProfileConfig {
    fn default() -> Self {
        ProfileConfig {
            tail_cut: 1e-8,
            x_max_factor: 50.0,
            rtol: 1e-12,
            max_step: 0.01,
            peak_nodes: 6000,
            tail_nodes: 4000,
        }
    }
}

/// A computed half-line profile; the full profile is the even extension.
#[derive(Debug, Clone)]
pub struct ProfileSolution {
    pub omega: f64,
    pub r_star: f64,
    /// Increasing grid on [0, x_end].
    pub xs: Vec<f64>,
    /// Profile values, strictly decreasing from r_star.
    pub rs: Vec<f64>,
    /// ‖R‖₂² over the whole line.
    pub mass: f64,
    /// E(R) over the whole line.
    pub energy: f64,
    /// max over grid nodes of |R'(x)² − (ωR² + 2G(R))|, with R' recovered
    /// from the grid data by five-point stencils.
    pub residual_first_integral: f64,
}

impl ProfileSolution {
    /// Evaluates the (even) profile at any x by local cubic interpolation,
    /// with the exponential tail continued beyond the last node.
    pub fn sample_at(&self, x: f64) -> f64 {
        let x = x.abs();
        let n = self.xs.len();
        let x_end = self.xs[n - 1];
        if x >= x_end {
            return self.rs[n - 1] * (-(self.omega.sqrt()) * (x - x_end)).exp();
        }
        let i = self.xs.partition_point(|&t| t <= x).saturating_sub(1);
        let lo = i.saturating_sub(1).min(n - 4);
        lagrange_value(&self.xs[lo..lo + 4], &self.rs[lo..lo + 4], x)
    }

    /// Delimited export, `x,R` with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,R\n");
        for (x, r) in self.xs.iter().zip(&self.rs) {
            out.push_str(&format!("{x:.16e},{r:.16e}\n"));
        }
        out
    }
}

fn lagrange_value(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for i in 0..xs.len() {
        let mut w = ys[i];
        for j in 0..xs.len() {
            if j != i {
                w *= (x - xs[j]) / (xs[i] - xs[j]);
            }
        }
        acc += w;
    }
    acc
}

/// Derivative of the local Lagrange interpolant at `xc`.
fn lagrange_derivative(xs: &[f64], ys: &[f64], xc: f64) -> f64 {
    let n = xs.len();
    let mut acc = 0.0;
    for i in 0..n {
        let mut sum = 0.0;
        for k in 0..n {
            if k == i {
                continue;
            }
            let mut prod = 1.0 / (xs[i] - xs[k]);
            for j in 0..n {
                if j != i && j != k {
                    prod *= (xc - xs[j]) / (xs[i] - xs[j]);
                }
            }
            sum += prod;
        }
        acc += ys[i] * sum;
    }
    acc
}

/// The open interval of frequencies carrying a ground-state branch:
/// (0, sup V), with `f64::INFINITY` for an unbounded V.
pub fn admissible_frequencies(n: &Nonlinearity) -> Result<(f64, f64)> {
    let report_g1 = criteria::check_conditions(n)?;
    if !report_g1.g1 {
        return Err(Error::NoBranch(format!(
            "(G1) fails for G = {}; no standing-wave branch exists",
            n.describe()
        )));
    }
    match criteria::sup_v(n) {
        SupV::Infinite => Ok((0.0, f64::INFINITY)),
        SupV::Finite { value, .. } => Ok((0.0, value)),
    }
}

fn require_admissible(n: &Nonlinearity, omega: f64) -> Result<f64> {
    if !omega.is_finite() || omega <= 0.0 {
        return Err(Error::Domain(format!("frequency must be positive; got {omega}")));
    }
    if let SupV::Finite { value, .. } = criteria::sup_v(n) {
        if omega >= value {
            return Err(Error::Domain(format!(
                "frequency {omega} is outside the admissible interval (0, {value})"
            )));
        }
    }
    criteria::r_star(n, omega)
}

/// Computes the profile at one frequency.
pub fn solve_profile(
    n: &Nonlinearity,
    omega: f64,
    method: Method,
    config: &ProfileConfig,
) -> Result<ProfileSolution> {
    let r_star = require_admissible(n, omega)?;
    let (xs, rs, state_residual) = match method {
        Method::Quadrature => {
            let (xs, rs) = quadrature_grid(n, omega, r_star, config)?;
            (xs, rs, None)
        }
        Method::Shooting => {
            let (xs, rs, resid) = shoot(n, omega, r_star, config)?;
            (xs, rs, Some(resid))
        }
    };

    if rs.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InconsistentBranch(
            "profile is not strictly decreasing on the half-line".into(),
        ));
    }

    // Whole-line functionals from the even extension.
    let sq: Vec<f64> = rs.iter().map(|r| r * r).collect();
    let mass = 2.0 * integrate_samples(&xs, &sq);
    let dens: Vec<f64> = rs.iter().map(|&r| 0.5 * n.w(omega, r) + n.g(r)).collect();
    let energy = 2.0 * integrate_samples(&xs, &dens);

    // Stencil residual from the grid data for both methods; shooting also
    // contributes the integrator's own conservation drift.
    let residual_first_integral =
        first_integral_residual(n, omega, &xs, &rs).max(state_residual.unwrap_or(0.0));

    Ok(ProfileSolution {
        omega,
        r_star,
        xs,
        rs,
        mass,
        energy,
        residual_first_integral,
    })
}

/// max |R'² − W(R)| over nodes, R' from five-point stencils with the even
/// mirror supplying the left neighbours of the peak.
fn first_integral_residual(n: &Nonlinearity, omega: f64, xs: &[f64], rs: &[f64]) -> f64 {
    let m = xs.len();
    if m < 5 {
        return f64::INFINITY;
    }
    // Extended arrays with two mirrored nodes.
    let mut xe = vec![-xs[2], -xs[1]];
    xe.extend_from_slice(xs);
    let mut re = vec![rs[2], rs[1]];
    re.extend_from_slice(rs);

    let mut worst = 0.0f64;
    for i in 0..m {
        let c = (i + 2).min(xe.len() - 3).max(2);
        let lo = c - 2;
        let dr = lagrange_derivative(&xe[lo..lo + 5], &re[lo..lo + 5], xs[i]);
        let defect = (dr * dr - n.w(omega, rs[i])).abs();
        worst = worst.max(defect);
    }
    worst
}

fn quadrature_grid(
    n: &Nonlinearity,
    omega: f64,
    r_star: f64,
    config: &ProfileConfig,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let w = |s: f64| n.w(omega, s);
    // Simple zero at the peak: W'(R_*) = -R_*² V'(R_*) < 0.
    let wp = 2.0 * omega * r_star + 2.0 * n.g_prime(r_star);
    if wp >= 0.0 {
        return Err(Error::InconsistentBranch(format!(
            "W does not decay through R_* = {r_star}; V'(R_*) ≤ 0"
        )));
    }

    let s_knee = 0.5 * r_star;
    let s_min = config.tail_cut * r_star;

    // Peak region, parametrized by u = sqrt(R_* − s).
    let u_knee = (r_star - s_knee).sqrt();
    let du = u_knee / config.peak_nodes as f64;
    let du_integrand = |u: f64| {
        let s = r_star - u * u;
        if s <= 0.0 {
            return 0.0;
        }
        2.0 * u / w(s).sqrt()
    };

    let cap = config.peak_nodes + config.tail_nodes + 2;
    let mut xs = Vec::with_capacity(cap);
    let mut rs = Vec::with_capacity(cap);
    xs.push(0.0);
    rs.push(r_star);
    let mut x = 0.0;
    for i in 0..config.peak_nodes {
        let (a, b) = (i as f64 * du, (i + 1) as f64 * du);
        x += gauss_fixed(&du_integrand, a, b);
        xs.push(x);
        rs.push(r_star - b * b);
    }

    // Tail region, log-spaced in s.
    let ds_integrand = |s: f64| 1.0 / w(s).sqrt();
    let ratio = (s_knee / s_min).ln() / config.tail_nodes as f64;
    let mut s_hi = s_knee;
    for j in 1..=config.tail_nodes {
        let s_lo = s_knee * (-(ratio * j as f64)).exp();
        if w(s_lo) <= 0.0 || w(s_hi) <= 0.0 {
            return Err(Error::InconsistentBranch(format!(
                "W(s) ≤ 0 inside (0, R_*) near s = {s_lo}; the first integral is invalid"
            )));
        }
        x += gauss_fixed(&ds_integrand, s_lo, s_hi);
        xs.push(x);
        rs.push(s_lo);
        s_hi = s_lo;
    }

    if xs.iter().any(|v| !v.is_finite()) {
        return Err(Error::InconsistentBranch(
            "quadrature produced a non-finite coordinate; W may vanish inside (0, R_*)".into(),
        ));
    }
    Ok((xs, rs))
}

// Dormand-Prince 5(4) coefficients; the stage abscissae are not needed for
// an autonomous system.
const DP_A: [[f64; 6]; 6] = [
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const DP_B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

fn shoot(
    n: &Nonlinearity,
    omega: f64,
    r_star: f64,
    config: &ProfileConfig,
) -> Result<(Vec<f64>, Vec<f64>, f64)> {
    let rhs = |y: [f64; 2]| [y[1], n.g_prime(y[0]) + omega * y[0]];
    let sqrt_omega = omega.sqrt();
    let x_max = config.x_max_factor / sqrt_omega;
    let h_max = config.max_step / sqrt_omega;
    let atol = 1e-14 * r_star;

    let mut x = 0.0;
    let mut y = [r_star, 0.0];
    let mut h = (1e-4 / sqrt_omega).min(h_max);
    let mut xs = vec![0.0];
    let mut rs = vec![r_star];
    let mut residual = 0.0f64;
    let mut k1 = rhs(y);

    while x < x_max {
        h = h.min(h_max).min(x_max - x + 1e-30);
        if h < 1e-13 / sqrt_omega {
            return Err(Error::NonConvergence(format!(
                "shooting step collapsed at x = {x} (ω = {omega}); \
                 the branch may sit too close to sup V"
            )));
        }
        let mut k = [[0.0f64; 2]; 7];
        k[0] = k1;
        for stage in 0..6 {
            let mut yi = y;
            for (j, kj) in k.iter().enumerate().take(stage + 1) {
                yi[0] += h * DP_A[stage][j] * kj[0];
                yi[1] += h * DP_A[stage][j] * kj[1];
            }
            k[stage + 1] = rhs(yi);
        }
        // 5th-order solution is the last stage evaluation point (FSAL).
        let mut y5 = y;
        for (j, kj) in k.iter().enumerate().take(6) {
            y5[0] += h * DP_A[5][j] * kj[0];
            y5[1] += h * DP_A[5][j] * kj[1];
        }
        let mut y4 = y;
        for (j, kj) in k.iter().enumerate() {
            y4[0] += h * DP_B4[j] * kj[0];
            y4[1] += h * DP_B4[j] * kj[1];
        }
        let mut err = 0.0f64;
        for i in 0..2 {
            let sc = atol + config.rtol * y[i].abs().max(y5[i].abs());
            err += ((y5[i] - y4[i]) / sc).powi(2);
        }
        let err = (err / 2.0).sqrt();
        if err <= 1.0 {
            x += h;
            y = y5;
            k1 = k[6];

            if y[0] <= config.tail_cut * r_star {
                xs.push(x);
                rs.push(y[0].max(0.0));
                break;
            }
            if y[0] > r_star * (1.0 + 1e-9) || (y[1] > 0.0 && y[0] > 1e-4 * r_star) {
                return Err(Error::Step(format!(
                    "shooting blew past R_* at x = {x} (R = {}, ω = {omega}); \
                     reduce the step or move ω inside the branch",
                    y[0]
                )));
            }
            if y[1] >= 0.0 {
                // Tail round-off excites the growing mode; stop cleanly.
                break;
            }
            xs.push(x);
            rs.push(y[0]);
            residual = residual.max((y[1] * y[1] - n.w(omega, y[0])).abs());
        }
        h *= (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
    }
    Ok((xs, rs, residual))
}

/// λ(ω) = ‖R_ω‖₂², by endpoint-regularized quadrature.
pub fn mass_of(n: &Nonlinearity, omega: f64) -> Result<f64> {
    branch_integral(n, omega, |s, _g| s * s)
}

/// E(R_ω), by the same route with density ½ωs² + 2G(s).
pub fn energy_of(n: &Nonlinearity, omega: f64) -> Result<f64> {
    branch_integral(n, omega, move |s, g| 0.5 * omega * s * s + 2.0 * g)
}

fn branch_integral(
    n: &Nonlinearity,
    omega: f64,
    numerator: impl Fn(f64, f64) -> f64,
) -> Result<f64> {
    let r_star = require_admissible(n, omega)?;
    // Positivity scan of W strictly inside (0, R_*).
    for i in 1..64 {
        let s = r_star * i as f64 / 64.0;
        if n.w(omega, s) <= 0.0 {
            return Err(Error::InconsistentBranch(format!(
                "W({s}) ≤ 0 strictly inside (0, R_*); ω = {omega} does not carry a profile"
            )));
        }
    }
    let f = |u: f64| {
        let s = r_star - u * u;
        if s <= 0.0 {
            return 0.0;
        }
        let w = n.w(omega, s);
        2.0 * u * numerator(s, n.g(s)) / w.sqrt()
    };
    let val = integrate(&f, 0.0, r_star.sqrt(), 1e-9)?;
    if !val.is_finite() {
        return Err(Error::InconsistentBranch(format!(
            "branch integral diverged at ω = {omega}"
        )));
    }
    Ok(2.0 * val)
}

/// Step used for frequency differencing when the caller does not supply
/// one: 10⁻³ of the admissible interval (10⁻³ω on an unbounded branch),
/// floored at 10⁻⁴ and clipped to stay admissible.
pub fn default_slope_step(n: &Nonlinearity, omega: f64) -> Result<f64> {
    let (_, hi) = admissible_frequencies(n)?;
    let mut h = if hi.is_finite() {
        (1e-3 * hi).max(1e-4)
    } else {
        (1e-3 * omega).max(1e-4)
    };
    h = h.min(0.45 * omega);
    if hi.is_finite() {
        h = h.min(0.45 * (hi - omega));
    }
    Ok(h)
}

/// Central-difference slope of λ at ω.
pub fn vk_slope(n: &Nonlinearity, omega: f64, h: f64) -> Result<f64> {
    if h.is_nan() || h <= 0.0 {
        return Err(Error::Step(format!("slope step must be positive; got {h}")));
    }
    let (_, hi) = admissible_frequencies(n)?;
    if omega - h <= 0.0 || omega + h >= hi {
        return Err(Error::Step(format!(
            "ω ± h = {} ± {h} leaves the admissible interval (0, {hi})",
            omega
        )));
    }
    let lam_plus = mass_of(n, omega + h)?;
    let lam_minus = mass_of(n, omega - h)?;
    Ok((lam_plus - lam_minus) / (2.0 * h))
}

/// Tabulated branch with slopes and the monotonicity verdict.
#[derive(Debug, Clone)]
pub struct LambdaCurve {
    pub omegas: Vec<f64>,
    pub r_stars: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub energies: Vec<f64>,
    pub slopes: Vec<f64>,
    pub monotone: bool,
    pub first_violation: Option<usize>,
}

impl LambdaCurve {
    pub fn min_slope(&self) -> f64 {
        self.slopes.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Delimited export with the fixed header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("omega,r_star,lambda,energy,dlambda_domega\n");
        for i in 0..self.omegas.len() {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                self.omegas[i], self.r_stars[i], self.lambdas[i], self.energies[i], self.slopes[i]
            ));
        }
        out
    }
}

/// Default frequency window: margins of 1% at the origin and 2% below a
/// finite supremum; the reference band [1/2, 2] on an unbounded branch.
pub fn default_omega_window(n: &Nonlinearity) -> Result<(f64, f64)> {
    let (_, hi) = admissible_frequencies(n)?;
    if hi.is_finite() {
        Ok((0.01 * hi, 0.98 * hi))
    } else {
        Ok((0.5, 2.0))
    }
}

/// Samples the branch on the default window.
pub fn lambda_curve(n: &Nonlinearity, n_points: usize) -> Result<LambdaCurve> {
    let (lo, hi) = default_omega_window(n)?;
    lambda_curve_in(n, lo, hi, n_points)
}

/// Samples the branch on an explicit window.
pub fn lambda_curve_in(n: &Nonlinearity, lo: f64, hi: f64, n_points: usize) -> Result<LambdaCurve> {
    if n_points < 3 {
        return Err(Error::input(
            "n_points",
            format!("at least 3 points are needed for slopes; got {n_points}"),
        ));
    }
    let (_, sup) = admissible_frequencies(n)?;
    if !(0.0 < lo && lo < hi && hi < sup) {
        return Err(Error::input(
            "omega window",
            format!("[{lo}, {hi}] must sit strictly inside (0, {sup})"),
        ));
    }
    let step = (hi - lo) / (n_points - 1) as f64;
    let omegas: Vec<f64> = (0..n_points).map(|i| lo + step * i as f64).collect();
    let mut r_stars = Vec::with_capacity(n_points);
    let mut lambdas = Vec::with_capacity(n_points);
    let mut energies = Vec::with_capacity(n_points);
    for &w in &omegas {
        r_stars.push(criteria::r_star(n, w)?);
        lambdas.push(mass_of(n, w)?);
        energies.push(energy_of(n, w)?);
    }
    let mut slopes = Vec::with_capacity(n_points);
    for i in 0..n_points {
        let (a, b) = if i == 0 {
            (0, 1)
        } else if i == n_points - 1 {
            (n_points - 2, n_points - 1)
        } else {
            (i - 1, i + 1)
        };
        slopes.push((lambdas[b] - lambdas[a]) / (omegas[b] - omegas[a]));
    }
    let first_violation = slopes.iter().position(|&s| s <= 0.0);
    Ok(LambdaCurve {
        omegas,
        r_stars,
        lambdas,
        energies,
        slopes,
        monotone: first_violation.is_none(),
        first_violation,
    })
}

/// Outcome of the uniqueness test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateVerdict {
    CertifiedUnique,
    Inconclusive,
}

impl std::fmt::Display for CertificateVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CertificateVerdict::CertifiedUnique => write!(f, "CERTIFIED_UNIQUE"),
            CertificateVerdict::Inconclusive => write!(f, "INCONCLUSIVE"),
        }
    }
}

/// Numerical evidence that the positive even ground state is unique: all
/// five hypotheses hold and λ(ω) is strictly increasing on the sampled
/// branch. Evidence, not proof.
#[derive(Debug, Clone)]
pub struct UniquenessCertificate {
    pub description: String,
    pub omega_window: (f64, f64),
    pub verdict: CertificateVerdict,
    /// Names the failing item when inconclusive.
    pub reason: Option<String>,
    pub min_slope: Option<f64>,
    pub n_points: usize,
}

pub fn uniqueness_certificate(n: &Nonlinearity, n_points: usize) -> Result<UniquenessCertificate> {
    let description = n.describe();
    let report = criteria::check_conditions(n)?;
    if let Some(failure) = report.first_failure() {
        return Ok(UniquenessCertificate {
            description,
            omega_window: (0.0, 0.0),
            verdict: CertificateVerdict::Inconclusive,
            reason: Some(format!("{failure} fails")),
            min_slope: None,
            n_points,
        });
    }
    let window = default_omega_window(n)?;
    let curve = lambda_curve_in(n, window.0, window.1, n_points)?;
    let max_lambda = curve.lambdas.iter().copied().fold(0.0, f64::max);
    let min_slope = curve.min_slope();
    let verdict = if curve.monotone && min_slope > 1e-10 * max_lambda {
        CertificateVerdict::CertifiedUnique
    } else {
        CertificateVerdict::Inconclusive
    };
    let reason = match verdict {
        CertificateVerdict::CertifiedUnique => None,
        CertificateVerdict::Inconclusive => Some(format!(
            "lambda slope not strictly positive (min slope {min_slope:.3e})"
        )),
    };
    Ok(UniquenessCertificate {
        description,
        omega_window: window,
        verdict,
        reason,
        min_slope: Some(min_slope),
        n_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonlinearity::nl;
    use approx::assert_relative_eq;

    fn quartic() -> Nonlinearity {
        nl(&[(-1, 1.0, 4.0)]).unwrap()
    }

    #[test]
    fn admissible_windows() {
        assert_eq!(admissible_frequencies(&quartic()).unwrap(), (0.0, f64::INFINITY));
        let n = nl(&[(-1, 1.0, 4.0), (1, 1.0, 6.0)]).unwrap();
        let (lo, hi) = admissible_frequencies(&n).unwrap();
        assert_eq!(lo, 0.0);
        assert_relative_eq!(hi, 0.5, max_relative = 1e-10);
        // s^3 - s^4 + s^5 with unit coefficients keeps G nonnegative
        let flat = nl(&[(1, 1.0, 3.0), (-1, 1.0, 4.0), (1, 1.0, 5.0)]).unwrap();
        assert!(matches!(admissible_frequencies(&flat), Err(Error::NoBranch(_))));
    }

    #[test]
    fn sech_profile_closed_form() {
        // R(x) = sqrt(omega/2) sech(sqrt(omega) x) for G = -s^4
        let n = quartic();
        let sol = solve_profile(&n, 1.0, Method::Quadrature, &ProfileConfig::default()).unwrap();
        assert_relative_eq!(sol.r_star, std::f64::consts::FRAC_1_SQRT_2, max_relative = 1e-12);
        let want = std::f64::consts::FRAC_1_SQRT_2 / 1.0f64.cosh(); // 0.45824...
        assert_relative_eq!(sol.sample_at(1.0), want, max_relative = 1e-8);
        let sech = |x: f64| std::f64::consts::FRAC_1_SQRT_2 / x.cosh();
        for (x, r) in sol.xs.iter().zip(&sol.rs) {
            assert!((r - sech(*x)).abs() < 1e-6, "mismatch at x = {x}");
        }
        assert!(sol.residual_first_integral < 1e-8);
    }

    #[test]
    fn shooting_matches_quadrature() {
        let n = quartic();
        let cfg = ProfileConfig::default();
        let quad = solve_profile(&n, 1.0, Method::Quadrature, &cfg).unwrap();
        let shot = solve_profile(&n, 1.0, Method::Shooting, &cfg).unwrap();
        let mut sup = 0.0f64;
        for (x, r) in shot.xs.iter().zip(&shot.rs) {
            sup = sup.max((quad.sample_at(*x) - r).abs());
        }
        assert!(sup < 1e-5, "methods differ by {sup}");
        assert!(shot.residual_first_integral < 1e-8);
    }

    #[test]
    fn cubic_branch_mass_and_energy() {
        let n = quartic();
        assert_relative_eq!(mass_of(&n, 1.0).unwrap(), 1.0, max_relative = 1e-8);
        assert_relative_eq!(mass_of(&n, 4.0).unwrap(), 2.0, max_relative = 1e-8);
        assert_relative_eq!(energy_of(&n, 1.0).unwrap(), -1.0 / 6.0, max_relative = 1e-8);
        assert_relative_eq!(energy_of(&n, 4.0).unwrap(), -8.0 / 6.0, max_relative = 1e-8);
        // λ = √ω / a for G = -a s⁴
        let scaled = nl(&[(-1, 2.0, 4.0)]).unwrap();
        assert_relative_eq!(mass_of(&scaled, 1.0).unwrap(), 0.5, max_relative = 1e-8);
    }

    #[test]
    fn grid_functionals_match_quadrature() {
        let n = quartic();
        let sol = solve_profile(&n, 1.0, Method::Quadrature, &ProfileConfig::default()).unwrap();
        assert_relative_eq!(sol.mass, 1.0, max_relative = 1e-6);
        assert_relative_eq!(sol.energy, -1.0 / 6.0, max_relative = 1e-6);
    }

    #[test]
    fn vk_slope_closed_form() {
        let n = quartic();
        assert_relative_eq!(vk_slope(&n, 1.0, 1e-3).unwrap(), 0.5, epsilon = 1e-4);
        assert_relative_eq!(vk_slope(&n, 4.0, 4e-3).unwrap(), 0.25, epsilon = 1e-4);
        assert!(vk_slope(&n, 1.0, 2.0).is_err());
    }

    #[test]
    fn lambda_curve_sqrt_law() {
        let n = quartic();
        let curve = lambda_curve_in(&n, 0.5, 2.0, 9).unwrap();
        assert!(curve.monotone);
        for (w, l) in curve.omegas.iter().zip(&curve.lambdas) {
            assert_relative_eq!(*l, w.sqrt(), max_relative = 1e-6);
        }
        assert!(lambda_curve_in(&n, 0.5, 2.0, 1).is_err());
    }

    #[test]
    fn certificates() {
        let unique = uniqueness_certificate(&quartic(), 17).unwrap();
        assert_eq!(unique.verdict, CertificateVerdict::CertifiedUnique);

        let bad = nl(&[(1, 1.0, 3.0), (-1, 1.0, 4.0)]).unwrap();
        let cert = uniqueness_certificate(&bad, 9).unwrap();
        assert_eq!(cert.verdict, CertificateVerdict::Inconclusive);
        assert_eq!(cert.reason.as_deref(), Some("G3 fails"));
    }
}
