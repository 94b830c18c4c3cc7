//! Independent grid-based route to the same ground states: direct energy
//! minimization on the L² sphere and the spectrum of the linearized
//! operator L₊ = −d²/dx² + G''(R₀) + ω₀.
//!
//! The minimizer runs a normalized gradient flow: a semi-implicit step
//! (backward Euler on the stiff Laplacian, explicit on G') followed by
//! renormalization to the sphere, with backtracking so the discrete energy
//! never increases. The spectral test discretizes L₊ as a symmetric
//! tridiagonal matrix with homogeneous boundary values.
//!
//! Restricted positivity is assessed in the even sector: on the whole
//! line the translation mode R₀' is an L² zero mode orthogonal to R₀, so
//! the complement-restricted infimum is only positive among even
//! functions, which is where the radial non-degeneracy statement lives.
//! The restricted eigenvalue solves the bordered (secular) equation
//! g(μ) = ⟨(L₊ − μ)⁻¹ρ, ρ⟩ = 0 between consecutive even eigenvalues.

use crate::error::{Error, Result};
use crate::nonlinearity::Nonlinearity;
use crate::profile::{self, Method, ProfileConfig};

/// Samples of a real function on the uniform grid of [−X, X] with an odd
/// number of nodes, so a center node exists.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    half_width: f64,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(half_width: f64, values: Vec<f64>) -> Result<Self> {
        if !half_width.is_finite() || half_width <= 0.0 {
            return Err(Error::input("half_width", "half-width must be positive"));
        }
        let n = values.len();
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::input(
                "n",
                format!("node count must be odd and at least 3; got {n}"),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::input("values", "grid values must be finite"));
        }
        Ok(GridFunction { half_width, values })
    }

    pub fn from_fn(half_width: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let h = 2.0 * half_width / (n - 1) as f64;
        let values = (0..n).map(|i| f(-half_width + h * i as f64)).collect();
        GridFunction::new(half_width, values)
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.values.len() - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        -self.half_width + self.spacing() * i as f64
    }

    fn compatible_with(&self, other: &GridFunction) -> bool {
        self.half_width == other.half_width && self.values.len() == other.values.len()
    }

    /// Trapezoidal inner product on the grid.
    pub fn inner(&self, other: &GridFunction) -> f64 {
        weighted_dot(self.spacing(), &self.values, &other.values)
    }
}

fn weighted_dot(h: f64, a: &[f64], b: &[f64]) -> f64 {
    let n = a.len();
    let mut acc = 0.5 * (a[0] * b[0] + a[n - 1] * b[n - 1]);
    for i in 1..n - 1 {
        acc += a[i] * b[i];
    }
    acc * h
}

/// Trapezoidal ∫ u².
pub fn grid_mass(u: &GridFunction) -> f64 {
    u.inner(u)
}

/// Trapezoidal energy ½∫(u')² + ∫G(|u|), with central differences inside
/// and one-sided differences at the (decaying) ends.
pub fn grid_energy(u: &GridFunction, n: &Nonlinearity) -> f64 {
    let h = u.spacing();
    let v = &u.values;
    let m = v.len();
    let deriv = |i: usize| -> f64 {
        if i == 0 {
            (v[1] - v[0]) / h
        } else if i == m - 1 {
            (v[m - 1] - v[m - 2]) / h
        } else {
            (v[i + 1] - v[i - 1]) / (2.0 * h)
        }
    };
    let density: Vec<f64> = (0..m)
        .map(|i| {
            let d = deriv(i);
            let s = v[i].abs();
            0.5 * d * d + if s > 0.0 { n.g(s) } else { 0.0 }
        })
        .collect();
    let mut acc = 0.5 * (density[0] + density[m - 1]);
    for d in &density[1..m - 1] {
        acc += d;
    }
    acc * h
}

/// Signed G'(|u|) sgn(u); smooth through zero because every exponent
/// exceeds 2.
fn g_prime_signed(n: &Nonlinearity, u: f64) -> f64 {
    if u == 0.0 {
        0.0
    } else {
        u.signum() * n.g_prime(u.abs())
    }
}

/// Dirichlet-form energy matching the flow discretization exactly; used
/// only for the descent test.
fn energy_fd(u: &[f64], h: f64, n: &Nonlinearity) -> f64 {
    let m = u.len();
    let mut dirichlet = u[0] * u[0] + u[m - 1] * u[m - 1]; // jumps to the zero ghosts
    for i in 1..m {
        let d = u[i] - u[i - 1];
        dirichlet += d * d;
    }
    let mut pot = 0.5 * (pot_at(n, u[0]) + pot_at(n, u[m - 1]));
    for &v in &u[1..m - 1] {
        pot += pot_at(n, v);
    }
    0.5 * dirichlet / h + pot * h
}

fn pot_at(n: &Nonlinearity, v: f64) -> f64 {
    let s = v.abs();
    if s > 0.0 {
        n.g(s)
    } else {
        0.0
    }
}

/// Initial guess for the minimizer.
#[derive(Debug, Clone)]
pub enum Init {
    GaussianBump,
    Supplied(GridFunction),
}

/// Converged sphere minimizer.
#[derive(Debug, Clone)]
pub struct MinimizerResult {
    /// Centered, nonnegative representative renormalized to the sphere.
    pub u: GridFunction,
    pub lambda_target: f64,
    /// −⟨−u'' + G'(u), u⟩ / λ, the multiplier of the profile equation.
    pub omega_estimate: f64,
    pub energy: f64,
    /// ‖∇E(u) + ω u‖ / ‖u‖ on the grid (the sphere-tangent residual).
    pub gradient_residual: f64,
    pub iterations: usize,
    /// Set when the final energy is not below the zero function's, i.e.
    /// λ may sit below the existence threshold.
    pub flat_warning: bool,
}

/// Projected (normalized) gradient descent for inf{E(u) : ‖u‖₂² = λ}.
pub fn minimize_on_sphere(
    n: &Nonlinearity,
    lambda: f64,
    half_width: f64,
    n_nodes: usize,
    init: Init,
    tol: f64,
) -> Result<MinimizerResult> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::input("lambda", "mass constraint must be positive"));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::input("tol", "tolerance must be positive"));
    }
    let mut u = match init {
        Init::GaussianBump => GridFunction::from_fn(half_width, n_nodes, |x| (-0.5 * x * x).exp())?,
        Init::Supplied(g) => {
            if g.values.len() != n_nodes || g.half_width != half_width {
                return Err(Error::GridMismatch(
                    "supplied initial guess does not match the requested grid".into(),
                ));
            }
            g
        }
    };
    let h = u.spacing();
    renormalize(&mut u.values, h, lambda);

    let m = n_nodes;
    let lap_diag = 2.0 / (h * h);
    let lap_off = -1.0 / (h * h);
    let apply_grad = |v: &[f64], out: &mut Vec<f64>| {
        out.clear();
        for i in 0..m {
            let left = if i > 0 { v[i - 1] } else { 0.0 };
            let right = if i + 1 < m { v[i + 1] } else { 0.0 };
            out.push((2.0 * v[i] - left - right) / (h * h) + g_prime_signed(n, v[i]));
        }
    };

    const MAX_ITERS: usize = 200_000;
    let mut tau = 0.1;
    let mut grad = Vec::with_capacity(m);
    let mut energy_now = energy_fd(&u.values, h, n);
    let mut iterations = 0;
    let mut residual = f64::INFINITY;
    let mut rhs = vec![0.0; m];
    let mut trial = vec![0.0; m];
    let mut diag = vec![0.0; m];

    while iterations < MAX_ITERS {
        apply_grad(&u.values, &mut grad);
        let gu = weighted_dot(h, &grad, &u.values);
        let omega_est = -gu / lambda;
        let mut tangent_sq = 0.0;
        for (i, (g, v)) in grad.iter().zip(&u.values).enumerate() {
            let t = g + omega_est * v;
            let w = if i == 0 || i == m - 1 { 0.5 } else { 1.0 };
            tangent_sq += w * t * t;
        }
        residual = (tangent_sq * h).sqrt() / lambda.sqrt();
        if residual < tol {
            break;
        }
        iterations += 1;

        // Semi-implicit step (implicit Laplacian, explicit G' and current
        // multiplier) with backtracking on the discrete energy. Carrying
        // the multiplier keeps constrained critical points exact fixed
        // points of the map.
        let mut accepted = false;
        while tau >= 1e-14 {
            for i in 0..m {
                rhs[i] = u.values[i] / tau
                    - g_prime_signed(n, u.values[i])
                    - omega_est * u.values[i];
                diag[i] = 1.0 / tau + lap_diag;
            }
            thomas_constant_off(&diag, lap_off, &rhs, &mut trial);
            renormalize(&mut trial, h, lambda);
            let energy_trial = energy_fd(&trial, h, n);
            if energy_trial <= energy_now - 1e-16 * (1.0 + energy_now.abs()) {
                std::mem::swap(&mut u.values, &mut trial);
                energy_now = energy_trial;
                tau = (tau * 1.2).min(10.0);
                accepted = true;
                break;
            }
            tau *= 0.5;
        }
        if !accepted {
            if residual < 1e3 * tol {
                break; // rounding floor of the discrete energy
            }
            return Err(Error::NonConvergence(format!(
                "sphere minimizer stalled at residual {residual:.3e} after {iterations} \
                 iterations (λ = {lambda})"
            )));
        }
    }
    if iterations >= MAX_ITERS && residual >= tol {
        return Err(Error::NonConvergence(format!(
            "sphere minimizer hit the iteration cap with residual {residual:.3e}"
        )));
    }

    // Nonnegative, centered representative.
    for v in &mut u.values {
        *v = v.abs();
    }
    center_peak(&mut u.values);
    renormalize(&mut u.values, h, lambda);

    apply_grad(&u.values, &mut grad);
    let gu = weighted_dot(h, &grad, &u.values);
    let omega_estimate = -gu / lambda;
    let mut tangent_sq = 0.0;
    for (i, (g, v)) in grad.iter().zip(&u.values).enumerate() {
        let t = g + omega_estimate * v;
        let w = if i == 0 || i == m - 1 { 0.5 } else { 1.0 };
        tangent_sq += w * t * t;
    }
    let gradient_residual = (tangent_sq * h).sqrt() / lambda.sqrt();
    let energy = grid_energy(&u, n);
    Ok(MinimizerResult {
        flat_warning: energy >= 0.0,
        u,
        lambda_target: lambda,
        omega_estimate,
        energy,
        gradient_residual,
        iterations,
    })
}

fn renormalize(v: &mut [f64], h: f64, lambda: f64) {
    let mass = weighted_dot(h, v, v);
    let factor = (lambda / mass).sqrt();
    for x in v {
        *x *= factor;
    }
}

fn center_peak(v: &mut [f64]) {
    let m = v.len();
    let center = (m - 1) / 2;
    let peak = v
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(center);
    if peak == center {
        return;
    }
    let mut shifted = vec![0.0; m];
    for (i, val) in shifted.iter_mut().enumerate() {
        let j = i as isize + peak as isize - center as isize;
        if j >= 0 && (j as usize) < m {
            *val = v[j as usize];
        }
    }
    v.copy_from_slice(&shifted);
}

/// ξ(v) = ∫ (v')² + (G''(R₀) + ω₀) v² dx on the grid.
pub fn quadratic_form_xi(
    n: &Nonlinearity,
    r0: &GridFunction,
    omega0: f64,
    v: &GridFunction,
) -> Result<f64> {
    if !r0.compatible_with(v) {
        return Err(Error::GridMismatch(
            "R₀ and v must share the same grid".into(),
        ));
    }
    let h = v.spacing();
    let vv = &v.values;
    let m = vv.len();
    let deriv = |i: usize| -> f64 {
        if i == 0 {
            (vv[1] - vv[0]) / h
        } else if i == m - 1 {
            (vv[m - 1] - vv[m - 2]) / h
        } else {
            (vv[i + 1] - vv[i - 1]) / (2.0 * h)
        }
    };
    let density: Vec<f64> = (0..m)
        .map(|i| {
            let d = deriv(i);
            let s = r0.values[i].abs();
            let curv = if s > 0.0 { n.g_double_prime(s) } else { 0.0 };
            d * d + (curv + omega0) * vv[i] * vv[i]
        })
        .collect();
    let mut acc = 0.5 * (density[0] + density[m - 1]);
    for d in &density[1..m - 1] {
        acc += d;
    }
    Ok(acc * h)
}

/// Discretized L₊ diagnostics at a branch point.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    /// Smallest eigenvalue of L₊ on the whole grid.
    pub eig_min_unrestricted: f64,
    /// Smallest eigenvalue restricted to even functions orthogonal to R₀.
    pub eig_min_orthogonal: f64,
    /// ‖L₊ (D R₀)‖ / ‖D R₀‖ for the discrete translation mode.
    pub zero_mode_residual: f64,
    /// Relative defect of the branch-derivative identity L₊ S₀ = −R₀.
    pub lplus_s0_residual: f64,
    /// ⟨S₀, R₀⟩₂, which equals ½ dλ/dω along the branch.
    pub s0_pairing: f64,
}

/// Builds the tridiagonal L₊ with homogeneous values at ±X and reports the
/// non-degeneracy diagnostics.
pub fn hessian_spectrum(
    n: &Nonlinearity,
    r0: &GridFunction,
    omega0: f64,
) -> Result<SpectralReport> {
    let h = r0.spacing();
    let m = r0.len() - 2; // interior nodes carry the Dirichlet operator
    let off = -1.0 / (h * h);
    let diag: Vec<f64> = (1..=m)
        .map(|i| {
            let s = r0.values()[i].abs();
            let curv = if s > 0.0 { n.g_double_prime(s) } else { 0.0 };
            2.0 / (h * h) + curv + omega0
        })
        .collect();

    let eig_min_unrestricted = smallest_eigenvalue_inverse_iteration(&diag, off)?;

    // Even-sector compression for the restricted eigenvalue.
    let (ediag, eoff, rho) = even_sector(&diag, off, &r0.values()[1..=m]);
    let eig_min_orthogonal = constrained_min_eigenvalue(&ediag, &eoff, &rho)?;

    // Translation zero mode, differentiated by the five-point centered
    // stencil so the mode error sits below the operator's own h² bias.
    let full = r0.values();
    let at = |j: isize| -> f64 {
        if j < 0 || j as usize >= full.len() {
            0.0
        } else {
            full[j as usize]
        }
    };
    let mut dr0 = vec![0.0; m];
    for i in 1..=m {
        let j = i as isize;
        dr0[i - 1] =
            (at(j - 2) - 8.0 * at(j - 1) + 8.0 * at(j + 1) - at(j + 2)) / (12.0 * h);
    }
    let zero_mode_residual = relative_image_norm(&diag, off, &dr0, &dr0);

    // Branch derivative S₀ by frequency differencing of fresh profiles.
    let (_, sup) = profile::admissible_frequencies(n)?;
    let mut h_omega = if sup.is_finite() { 1e-3 * sup } else { 1e-3 * omega0 };
    h_omega = h_omega.max(1e-6 * omega0);
    let cfg = ProfileConfig::default();
    let sample = |w: f64| -> Result<Vec<f64>> {
        let sol = profile::solve_profile(n, w, Method::Quadrature, &cfg)?;
        Ok((1..=m).map(|i| sol.sample_at(r0.node(i))).collect())
    };
    let s0: Vec<f64> = if omega0 + h_omega < sup {
        let plus = sample(omega0 + h_omega)?;
        let minus = sample(omega0 - h_omega)?;
        plus.iter()
            .zip(&minus)
            .map(|(p, q)| (p - q) / (2.0 * h_omega))
            .collect()
    } else {
        let here = sample(omega0)?;
        let minus = sample(omega0 - h_omega)?;
        here.iter()
            .zip(&minus)
            .map(|(p, q)| (p - q) / h_omega)
            .collect()
    };

    let r_interior = &r0.values()[1..=m];
    let mut image = vec![0.0; m];
    apply_tridiag(&diag, off, &s0, &mut image);
    let mut defect = 0.0;
    let mut r_norm = 0.0;
    for i in 0..m {
        let d = image[i] + r_interior[i];
        defect += d * d;
        r_norm += r_interior[i] * r_interior[i];
    }
    let lplus_s0_residual = (defect / r_norm).sqrt();

    let s0_pairing = weighted_dot(h, &s0, r_interior);

    Ok(SpectralReport {
        eig_min_unrestricted,
        eig_min_orthogonal,
        zero_mode_residual,
        lplus_s0_residual,
        s0_pairing,
    })
}

// --- tridiagonal machinery -------------------------------------------------

fn apply_tridiag(diag: &[f64], off: f64, v: &[f64], out: &mut [f64]) {
    let m = v.len();
    for i in 0..m {
        let left = if i > 0 { v[i - 1] } else { 0.0 };
        let right = if i + 1 < m { v[i + 1] } else { 0.0 };
        out[i] = diag[i] * v[i] + off * (left + right);
    }
}

fn relative_image_norm(diag: &[f64], off: f64, v: &[f64], norm_of: &[f64]) -> f64 {
    let mut image = vec![0.0; v.len()];
    apply_tridiag(diag, off, v, &mut image);
    let num: f64 = image.iter().map(|x| x * x).sum::<f64>().sqrt();
    let den: f64 = norm_of.iter().map(|x| x * x).sum::<f64>().sqrt();
    num / den
}

/// Thomas solve for a symmetric tridiagonal system with constant
/// off-diagonal, valid when the matrix is positive definite.
fn thomas_constant_off(diag: &[f64], off: f64, rhs: &[f64], out: &mut Vec<f64>) {
    let m = diag.len();
    let mut c = vec![0.0; m];
    out.clear();
    out.resize(m, 0.0);
    let mut beta = diag[0];
    out[0] = rhs[0] / beta;
    for i in 1..m {
        c[i] = off / beta;
        beta = diag[i] - off * c[i];
        out[i] = (rhs[i] - off * out[i - 1]) / beta;
    }
    for i in (0..m - 1).rev() {
        let next = out[i + 1];
        out[i] -= c[i + 1] * next;
    }
}

/// Shifted inverse iteration from a Gershgorin lower bound; the shifted
/// matrix is positive definite so the Thomas solve is stable.
fn smallest_eigenvalue_inverse_iteration(diag: &[f64], off: f64) -> Result<f64> {
    let m = diag.len();
    let floor = diag
        .iter()
        .map(|d| d + 2.0 * off) // off is negative
        .fold(f64::INFINITY, f64::min);
    let sigma = floor - 1e-3 * (1.0 + floor.abs());
    let shifted: Vec<f64> = diag.iter().map(|d| d - sigma).collect();

    let mut v: Vec<f64> = (0..m)
        .map(|i| 1.0 + 0.3 * ((i * 2654435761) % 97) as f64 / 97.0)
        .collect();
    normalize(&mut v);
    let mut history = Vec::new();
    let mut rho_old = f64::INFINITY;
    let mut w = Vec::with_capacity(m);
    for _ in 0..2000 {
        thomas_constant_off(&shifted, off, &v, &mut w);
        normalize(&mut w);
        std::mem::swap(&mut v, &mut w);
        let mut image = vec![0.0; m];
        apply_tridiag(diag, off, &v, &mut image);
        let rho: f64 = v.iter().zip(&image).map(|(a, b)| a * b).sum();
        history.push(rho);
        if (rho - rho_old).abs() <= 1e-13 * rho.abs().max(1.0) {
            return Ok(rho);
        }
        rho_old = rho;
    }
    let tail: Vec<String> = history.iter().rev().take(5).map(|r| format!("{r:.6e}")).collect();
    Err(Error::NonConvergence(format!(
        "inverse iteration stagnated; Rayleigh-quotient history (most recent first): {}",
        tail.join(", ")
    )))
}

fn normalize(v: &mut [f64]) {
    let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in v {
        *x /= norm;
    }
}

/// Compresses the operator to even functions about the center node. With
/// y₀ = v_c and y_j = √2 v_{c+j} the compression is again symmetric
/// tridiagonal with a √2 coupling on the first off-diagonal entry.
fn even_sector(diag: &[f64], off: f64, r_interior: &[f64]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let m = diag.len();
    let c = (m - 1) / 2;
    let mm = c + 1;
    let mut ediag = Vec::with_capacity(mm);
    let mut eoff = Vec::with_capacity(mm.saturating_sub(1));
    let mut rho = Vec::with_capacity(mm);
    for j in 0..mm {
        ediag.push(diag[c + j]);
        rho.push(if j == 0 {
            r_interior[c]
        } else {
            std::f64::consts::SQRT_2 * r_interior[c + j]
        });
    }
    for j in 0..mm - 1 {
        eoff.push(if j == 0 { std::f64::consts::SQRT_2 * off } else { off });
    }
    let norm: f64 = rho.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in &mut rho {
        *x /= norm;
    }
    (ediag, eoff, rho)
}

/// Counts eigenvalues below x (Sturm sequence via the LDLᵀ pivots).
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        let e = off[i - 1];
        let denom = if q.abs() < 1e-300 { 1e-300_f64.copysign(q) } else { q };
        q = diag[i] - x - e * e / denom;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// k smallest eigenvalues by Sturm bisection.
fn smallest_eigenvalues(diag: &[f64], off: &[f64], k: usize) -> Vec<f64> {
    let m = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..m {
        let radius = if i == 0 {
            off.first().map_or(0.0, |e| e.abs())
        } else if i == m - 1 {
            off[i - 1].abs()
        } else {
            off[i - 1].abs() + off[i].abs()
        };
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
    }
    (1..=k)
        .map(|idx| {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if sturm_count(diag, off, mid) >= idx {
                    b = mid;
                } else {
                    a = mid;
                }
                if b - a <= 1e-13 * b.abs().max(1.0) {
                    break;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// Tridiagonal solve with partial pivoting (the shifted matrix inside a
/// spectral gap is indefinite).
fn solve_tridiag_pivoting(diag: &[f64], off: &[f64], rhs: &[f64]) -> Vec<f64> {
    let m = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![0.0; m]; // superdiagonal
    let mut f = vec![0.0; m]; // second superdiagonal fill-in
    e[..(m - 1)].copy_from_slice(&off[..(m - 1)]);
    let mut b = rhs.to_vec();
    let mut sub: Vec<f64> = (0..m - 1).map(|i| off[i]).collect();

    for i in 0..m - 1 {
        if sub[i].abs() > d[i].abs() {
            // Swap rows i and i+1.
            let (ri0, ri1) = (d[i], e[i]);
            d[i] = sub[i];
            e[i] = d[i + 1];
            let fi = if i + 2 < m { e[i + 1] } else { 0.0 };
            d[i + 1] = ri1;
            f[i] = fi;
            if i + 2 < m {
                e[i + 1] = 0.0;
            }
            b.swap(i, i + 1);
            // The eliminated row now holds the former row i.
            let factor = ri0 / d[i];
            d[i + 1] -= factor * e[i];
            if i + 2 < m {
                e[i + 1] -= factor * f[i];
            }
            b[i + 1] -= factor * b[i];
        } else {
            let factor = sub[i] / d[i];
            d[i + 1] -= factor * e[i];
            if i + 2 < m {
                // no fill beyond the first superdiagonal without a swap
            }
            b[i + 1] -= factor * b[i];
        }
        if i + 1 < m - 1 {
            sub[i + 1] = off[i + 1];
        }
    }

    let mut x = vec![0.0; m];
    for i in (0..m).rev() {
        let mut acc = b[i];
        if i + 1 < m {
            acc -= e[i] * x[i + 1];
        }
        if i + 2 < m {
            acc -= f[i] * x[i + 2];
        }
        x[i] = acc / d[i];
    }
    x
}

/// Smallest eigenvalue of the operator restricted to the orthogonal
/// complement of ρ: the first root of g(μ) = ⟨(A − μ)⁻¹ρ, ρ⟩ scanning the
/// gaps between consecutive unconstrained eigenvalues.
fn constrained_min_eigenvalue(diag: &[f64], off: &[f64], rho: &[f64]) -> Result<f64> {
    let eigs = smallest_eigenvalues(diag, off, 5);
    let span = (eigs[4] - eigs[0]).abs().max(1.0);
    let g = |mu: f64| -> f64 {
        let shifted: Vec<f64> = diag.iter().map(|d| d - mu).collect();
        let x = solve_tridiag_pivoting(&shifted, off, rho);
        x.iter().zip(rho).map(|(a, b)| a * b).sum()
    };
    for gap in 0..4 {
        let delta = 1e-9 * span;
        let (lo, hi) = (eigs[gap] + delta, eigs[gap + 1] - delta);
        if hi <= lo {
            continue;
        }
        let (glo, ghi) = (g(lo), g(hi));
        if glo >= 0.0 {
            // The bottom eigenvector is already orthogonal to ρ.
            return Ok(eigs[gap]);
        }
        if ghi < 0.0 {
            continue;
        }
        // Bisection: g is increasing inside a gap.
        let (mut a, mut b) = (lo, hi);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if g(mid) < 0.0 {
                a = mid;
            } else {
                b = mid;
            }
            if b - a <= 1e-12 * span {
                break;
            }
        }
        return Ok(0.5 * (a + b));
    }
    Err(Error::NonConvergence(
        "no root of the bordered secular equation in the first spectral gaps".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonlinearity::nl;
    use approx::assert_relative_eq;

    fn quartic() -> Nonlinearity {
        nl(&[(-1, 1.0, 4.0)]).unwrap()
    }

    fn sech_soliton(half_width: f64, n_nodes: usize, omega: f64) -> GridFunction {
        let amp = (omega / 2.0).sqrt();
        let k = omega.sqrt();
        GridFunction::from_fn(half_width, n_nodes, |x| amp / (k * x).cosh()).unwrap()
    }

    #[test]
    fn grid_basics() {
        let z = GridFunction::from_fn(20.0, 2001, |_| 0.0).unwrap();
        assert_eq!(grid_mass(&z), 0.0);
        assert_eq!(grid_energy(&z, &quartic()), 0.0);
        assert!(GridFunction::from_fn(20.0, 2000, |_| 0.0).is_err());

        let soliton = sech_soliton(20.0, 2001, 4.0);
        assert_relative_eq!(grid_mass(&soliton), 2.0, max_relative = 1e-6);

        // scaling u -> c u multiplies the mass by c²
        let scaled = GridFunction::new(20.0, soliton.values().iter().map(|v| 3.0 * v).collect())
            .unwrap();
        assert_relative_eq!(grid_mass(&scaled), 9.0 * grid_mass(&soliton), max_relative = 1e-14);
    }

    #[test]
    fn soliton_grid_energy() {
        let soliton = sech_soliton(20.0, 2001, 1.0);
        let e = grid_energy(&soliton, &quartic());
        assert!((e + 1.0 / 6.0).abs() < 1e-4, "E = {e}");

        // translation by whole grid steps preserves the energy
        let h = soliton.spacing();
        let shifted = GridFunction::from_fn(20.0, 2001, |x| {
            let amp = std::f64::consts::FRAC_1_SQRT_2;
            amp / (x - 10.0 * h).cosh()
        })
        .unwrap();
        let e2 = grid_energy(&shifted, &quartic());
        assert!((e - e2).abs() < 1e-6, "translated energy drifted: {e} vs {e2}");
    }

    #[test]
    fn minimizer_from_exact_soliton_stops_immediately() {
        let soliton = sech_soliton(20.0, 2001, 1.0);
        let result = minimize_on_sphere(
            &quartic(),
            grid_mass(&soliton),
            20.0,
            2001,
            Init::Supplied(soliton),
            5e-4,
        )
        .unwrap();
        assert!(result.iterations <= 2, "took {} iterations", result.iterations);
        assert!(result.gradient_residual < 5e-4);
    }

    #[test]
    fn minimizer_reaches_soliton_mass_two() {
        let result = minimize_on_sphere(&quartic(), 2.0, 20.0, 2001, Init::GaussianBump, 1e-8)
            .unwrap();
        let peak = result.u.values().iter().cloned().fold(0.0, f64::max);
        assert!((peak - std::f64::consts::SQRT_2).abs() < 1e-3, "peak = {peak}");
        assert!((result.omega_estimate - 4.0).abs() < 1e-3 * 4.0);
        assert!(!result.flat_warning);
        assert_relative_eq!(grid_mass(&result.u), 2.0, max_relative = 1e-10);
    }

    #[test]
    fn xi_reference_values() {
        let n = quartic();
        let r0 = sech_soliton(20.0, 8001, 1.0);
        // translation mode
        let h = r0.spacing();
        let m = r0.len();
        let mut dr = vec![0.0; m];
        for (i, slot) in dr.iter_mut().enumerate().take(m - 1).skip(1) {
            *slot = (r0.values()[i + 1] - r0.values()[i - 1]) / (2.0 * h);
        }
        let v = GridFunction::new(20.0, dr).unwrap();
        let xi_zero = quadratic_form_xi(&n, &r0, 1.0, &v).unwrap();
        assert!(xi_zero.abs() < 1e-4 * grid_mass(&v), "xi = {xi_zero}");

        // R₀ itself is a negative direction: ξ(R₀) = -8 ∫ R₀⁴ = -8/3
        let xi_r0 = quadratic_form_xi(&n, &r0, 1.0, &r0).unwrap();
        assert!((xi_r0 + 8.0 / 3.0).abs() < 1e-3, "xi(R0) = {xi_r0}");

        let small = GridFunction::from_fn(10.0, 101, |_| 0.0).unwrap();
        assert!(quadratic_form_xi(&n, &r0, 1.0, &small).is_err());
    }

    #[test]
    fn pivoted_tridiagonal_solve_indefinite() {
        // Indefinite symmetric tridiagonal with a dominant subdiagonal,
        // checked by the residual of A x − b.
        let diag = [0.1, -2.0, 0.3, 1.5, -0.7];
        let off = [3.0, -1.2, 2.5, 0.4];
        let rhs = [1.0, -2.0, 0.5, 4.0, -1.0];
        let x = solve_tridiag_pivoting(&diag, &off, &rhs);
        for i in 0..5 {
            let mut ax = diag[i] * x[i];
            if i > 0 {
                ax += off[i - 1] * x[i - 1];
            }
            if i + 1 < 5 {
                ax += off[i] * x[i + 1];
            }
            assert!((ax - rhs[i]).abs() < 1e-12, "residual at row {i}: {}", ax - rhs[i]);
        }
    }

    #[test]
    fn sturm_bisection_matches_laplacian_spectrum() {
        // -d²/dx² on (0, 1) with zero ends: eigenvalues 2(1 - cos kπ/(m+1))/h².
        let m = 50;
        let h = 1.0 / (m as f64 + 1.0);
        let diag = vec![2.0 / (h * h); m];
        let off = vec![-1.0 / (h * h); m - 1];
        let eigs = smallest_eigenvalues(&diag, &off, 3);
        for (k, eig) in eigs.iter().enumerate() {
            let theta = (k + 1) as f64 * std::f64::consts::PI / (m as f64 + 1.0);
            let want = 2.0 * (1.0 - theta.cos()) / (h * h);
            assert!((eig - want).abs() < 1e-8 * want, "mode {k}: {eig} vs {want}");
        }
    }

    #[test]
    fn poeschl_teller_spectrum() {
        // L₊ = -d²/dx² + 1 - 6 sech²x has its bottom eigenvalue at -3.
        let n = quartic();
        let r0 = sech_soliton(20.0, 2001, 1.0);
        let report = hessian_spectrum(&n, &r0, 1.0).unwrap();
        assert!((report.eig_min_unrestricted + 3.0).abs() < 1e-3);
        assert!(report.zero_mode_residual < 1e-3);
        assert!(report.eig_min_orthogonal > 0.0);
        assert!(report.eig_min_unrestricted <= report.eig_min_orthogonal);
        // ⟨S₀, R₀⟩ = ½ dλ/dω = 1/4 at ω = 1
        assert!((report.s0_pairing - 0.25).abs() < 1e-3 * 0.25);
        assert!(report.lplus_s0_residual < 0.05);
    }
}
