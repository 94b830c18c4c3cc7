//! Prints how far each headline quantity sits from its test tolerance;
//! handy when retuning grids or solver defaults.

use groundstate::nonlinearity::nl;
use groundstate::profile::{energy_of, mass_of, solve_profile, vk_slope, Method, ProfileConfig};
use groundstate::variational::{grid_mass, hessian_spectrum, minimize_on_sphere, GridFunction, Init};

fn main() {
    let n = nl(&[(-1, 1.0, 4.0)]).unwrap();
    let cfg = ProfileConfig::default();

    // C1 margins (tolerance 1e-6 relative)
    for omega in [0.25f64, 1.0, 4.0] {
        let m = (mass_of(&n, omega).unwrap() / omega.sqrt() - 1.0).abs();
        let e = (energy_of(&n, omega).unwrap() / (-omega.powf(1.5) / 6.0) - 1.0).abs();
        println!("C1 omega={omega}: mass rel err {m:.2e} (/1e-6), energy rel err {e:.2e}");
    }

    // C3 margins
    let quad = solve_profile(&n, 1.0, Method::Quadrature, &cfg).unwrap();
    let shot = solve_profile(&n, 1.0, Method::Shooting, &cfg).unwrap();
    let amp = std::f64::consts::FRAC_1_SQRT_2;
    let sup = quad.xs.iter().zip(&quad.rs).map(|(x, r)| (r - amp / x.cosh()).abs()).fold(0.0f64, f64::max);
    let agree = shot.xs.iter().zip(&shot.rs).map(|(x, r)| (quad.sample_at(*x) - r).abs()).fold(0.0f64, f64::max);
    println!("C3 sech sup {sup:.2e} (/1e-6), method agreement {agree:.2e} (/1e-5)");
    println!("C3 residuals quad {:.2e} shot {:.2e} (/1e-8)", quad.residual_first_integral, shot.residual_first_integral);

    // C7 margins
    let s1 = (vk_slope(&n, 1.0, 1e-3).unwrap() - 0.5).abs();
    let s4 = (vk_slope(&n, 4.0, 4e-3).unwrap() - 0.25).abs();
    println!("C7 slope errors {s1:.2e}, {s4:.2e} (/1e-4)");

    // C8 margins
    let r0 = GridFunction::from_fn(20.0, 2001, |x| quad.sample_at(x)).unwrap();
    let rep = hessian_spectrum(&n, &r0, 1.0).unwrap();
    println!("C8 eig err {:.2e} (/1e-3), zero-mode {:.2e} (/1e-3), pairing rel {:.2e} (/1e-3), eig_orth {:.3}",
        (rep.eig_min_unrestricted + 3.0).abs(), rep.zero_mode_residual,
        (rep.s0_pairing / 0.25 - 1.0).abs(), rep.eig_min_orthogonal);

    // C9 margins
    for (fam, lam, tag) in [
        (nl(&[(-1, 1.0, 4.0)]).unwrap(), 1.0, "quartic"),
        (nl(&[(-1, 1.0, 4.0), (1, 1.0, 6.0)]).unwrap(), mass_of(&nl(&[(-1,1.0,4.0),(1,1.0,6.0)]).unwrap(), 0.3).unwrap(), "quartic-sextic"),
        (nl(&[(-1, 1.0, 3.0), (-1, 1.0, 4.0)]).unwrap(), mass_of(&nl(&[(-1,1.0,3.0),(-1,1.0,4.0)]).unwrap(), 1.0).unwrap(), "cubic-quartic"),
    ] {
        let res = minimize_on_sphere(&fam, lam, 20.0, 2001, Init::GaussianBump, 1e-8).unwrap();
        let branch = solve_profile(&fam, res.omega_estimate, Method::Quadrature, &cfg).unwrap();
        let diff: Vec<f64> = (0..res.u.len()).map(|i| res.u.values()[i] - branch.sample_at(res.u.node(i))).collect();
        let d = grid_mass(&GridFunction::new(20.0, diff).unwrap()).sqrt();
        println!("C9 {tag}: L2 distance {d:.2e} (/1e-3), iters {}", res.iterations);
    }
    let res2 = minimize_on_sphere(&n, 2.0, 20.0, 2001, Init::GaussianBump, 1e-8).unwrap();
    let peak = res2.u.values().iter().cloned().fold(0.0f64, f64::max);
    println!("C9 peak err {:.2e} (/1e-3)", (peak - std::f64::consts::SQRT_2).abs());
}
