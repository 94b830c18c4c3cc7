//! End-to-end acceptance suite. Each test prints one PASS line; a failed
//! assertion names the criterion that broke.

mod common;

use std::time::Instant;

use groundstate::criteria::{
    classify_family, d_star, lemma_sweep, m_function, classification_table, verify_table, Verdict,
};
use groundstate::nonlinearity::nl;
use groundstate::profile::{
    lambda_curve_in, mass_of, energy_of, solve_profile, uniqueness_certificate, vk_slope,
    CertificateVerdict, Method, ProfileConfig,
};
use groundstate::variational::{
    grid_mass, hessian_spectrum, minimize_on_sphere, GridFunction, Init,
};
use groundstate::Nonlinearity;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn quartic() -> Nonlinearity {
    nl(&[(-1, 1.0, 4.0)]).unwrap()
}

/// Families with (G3) ∧ (G5) used by the branch-wide checks.
fn certified_families() -> Vec<(&'static str, Nonlinearity)> {
    vec![
        ("-s^4", quartic()),
        ("-s^3-s^4", nl(&[(-1, 1.0, 3.0), (-1, 1.0, 4.0)]).unwrap()),
        ("-s^4+s^6", nl(&[(-1, 1.0, 4.0), (1, 1.0, 6.0)]).unwrap()),
    ]
}

#[test]
fn c01_cubic_branch_closed_form() {
    let n = quartic();
    for omega in [0.25, 1.0, 4.0] {
        let clock = Instant::now();
        let mass = mass_of(&n, omega).unwrap();
        let energy = energy_of(&n, omega).unwrap();
        let elapsed = clock.elapsed();
        let mass_want = omega.sqrt();
        let energy_want = -omega.powf(1.5) / 6.0;
        assert!(
            ((mass - mass_want) / mass_want).abs() < 1e-6,
            "mass({omega}) = {mass}, want {mass_want}"
        );
        assert!(
            ((energy - energy_want) / energy_want).abs() < 1e-6,
            "energy({omega}) = {energy}, want {energy_want}"
        );
        assert!(elapsed.as_secs_f64() < 1.0, "point took {elapsed:?}");
    }
    println!("[acceptance] C1 cubic branch closed form: PASS");
}

#[test]
fn c02_pure_power_mass_scaling() {
    for p in [3.0, 4.0, 5.0] {
        let n = nl(&[(-1, 1.0, p)]).unwrap();
        let omegas: Vec<f64> = (0..9).map(|i| 0.5 + 1.5 * i as f64 / 8.0).collect();
        let logs_w: Vec<f64> = omegas.iter().map(|w| w.ln()).collect();
        let logs_l: Vec<f64> = omegas
            .iter()
            .map(|&w| mass_of(&n, w).unwrap().ln())
            .collect();
        let slope = common::regression_slope(&logs_w, &logs_l);
        let want = (6.0 - p) / (2.0 * (p - 2.0));
        assert!(
            (slope - want).abs() < 1e-3,
            "p = {p}: log-log slope {slope}, want {want}"
        );
    }
    println!("[acceptance] C2 pure-power mass scaling: PASS");
}

#[test]
fn c03_profile_fidelity() {
    let cfg = ProfileConfig::default();

    // Exact sech soliton at every grid node.
    let n = quartic();
    let sol = solve_profile(&n, 1.0, Method::Quadrature, &cfg).unwrap();
    let amp = std::f64::consts::FRAC_1_SQRT_2;
    let mut sup = 0.0f64;
    for (x, r) in sol.xs.iter().zip(&sol.rs) {
        sup = sup.max((r - amp / x.cosh()).abs());
    }
    assert!(sup < 1e-6, "sech sup-norm error {sup}");

    // Method agreement and first-integral residual on five families.
    let families: Vec<(Nonlinearity, f64)> = vec![
        (quartic(), 1.0),
        (nl(&[(-1, 1.0, 3.0)]).unwrap(), 1.3),
        (nl(&[(-1, 1.0, 5.0)]).unwrap(), 0.8),
        (nl(&[(-1, 1.0, 3.0), (-1, 1.0, 4.0)]).unwrap(), 1.0),
        (nl(&[(-1, 1.0, 4.0), (1, 1.0, 6.0)]).unwrap(), 0.4),
    ];
    for (fam, omega) in &families {
        let quad = solve_profile(fam, *omega, Method::Quadrature, &cfg).unwrap();
        let shot = solve_profile(fam, *omega, Method::Shooting, &cfg).unwrap();
        let mut diff = 0.0f64;
        for (x, r) in shot.xs.iter().zip(&shot.rs) {
            diff = diff.max((quad.sample_at(*x) - r).abs());
        }
        assert!(diff < 1e-5, "method disagreement {diff} for {}", fam.describe());
        assert!(
            quad.residual_first_integral < 1e-8,
            "quadrature residual {} for {}",
            quad.residual_first_integral,
            fam.describe()
        );
        assert!(
            shot.residual_first_integral < 1e-8,
            "shooting residual {} for {}",
            shot.residual_first_integral,
            fam.describe()
        );
    }
    println!("[acceptance] C3 profile fidelity: PASS");
}

#[test]
fn c04_lemma_suite() {
    let sweep = lemma_sweep(0, 10_000, 1000);
    assert!(
        sweep.max_interior <= 1.0 + 1e-12,
        "interior max {} at {:?}",
        sweep.max_interior,
        sweep.worst_interior
    );
    assert!(
        sweep.max_boundary_deviation <= 1e-12,
        "boundary deviation {}",
        sweep.max_boundary_deviation
    );
    let m = m_function(3.0, 2.0, 1.0).unwrap();
    assert!((m - 0.75).abs() <= 1e-12, "M(3,2,1) = {m}");
    println!("[acceptance] C4 lemma suite: PASS");
}

#[test]
fn c05_threshold_oracle_equivalence() {
    // Documented d_*(3,4,5) against the scan-and-refine oracle.
    let closed = d_star(3.0, 4.0, 5.0).unwrap();
    let brute = common::brute_force_d_star(3.0, 4.0, 5.0);
    assert!(
        (closed - brute).abs() < 1e-8,
        "d_*(3,4,5): closed {closed} vs brute {brute}"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut agreements = 0usize;
    let total = 1000usize;
    for i in 0..total {
        let b = (rng.gen_range(0.1f64.ln()..10.0f64.ln())).exp();
        let c = (rng.gen_range(0.1f64.ln()..10.0f64.ln())).exp();
        let p = rng.gen_range(2.1..7.0);
        let q = p + rng.gen_range(0.1..2.5);
        let r = q + rng.gen_range(0.1..2.5);
        let t = groundstate::criteria::infimum_sign_threshold(b, c, p, q, r).unwrap();
        let a = t * if i % 2 == 0 { 1.01 } else { 0.99 };
        let predicted_nonneg = a >= t;
        let inf = common::brute_force_inf_k(a, b, c, p, q, r);
        // The draws sit 1% away from the threshold, so inf k = A − T is
        // ±0.01·T; classify the observed sign at a 10⁻⁶·T deadband.
        let observed_nonneg = inf >= -1e-6 * t;
        if predicted_nonneg == observed_nonneg {
            agreements += 1;
        } else {
            panic!(
                "threshold disagreement at (A,B,C,p,q,r) = ({a},{b},{c},{p},{q},{r}): \
                 T = {t}, brute inf = {inf}"
            );
        }
    }
    assert_eq!(agreements, total);
    println!("[acceptance] C5 threshold/oracle equivalence: PASS");
}

#[test]
fn c06_classification_table() {
    // The table rows, in order: signs, regime cells, #A, Ω bounded,
    // verdict.
    type RowCells = ([i8; 3], [Option<i8>; 3], u8, bool, Verdict);
    #[rustfmt::skip]
    let expected: Vec<RowCells> = vec![
        ([-1, 0, 0],  [Some(1), None, None],            0, false, Verdict::G3AndG5),
        ([-1, 1, 0],  [None, None, None],               1, true,  Verdict::G3AndG5),
        ([1, -1, 0],  [Some(1), Some(1), None],         0, false, Verdict::NotG3AndG5),
        ([-1, -1, 0], [Some(1), Some(1), None],         0, false, Verdict::G3AndG5),
        ([1, 1, -1],  [Some(1), Some(1), Some(1)],      0, false, Verdict::NotG3AndG5),
        ([1, -1, 1],  [None, None, None],               0, false, Verdict::NotG3AndG5),
        ([1, -1, -1], [Some(1), Some(1), Some(1)],      0, false, Verdict::NotG3AndG5),
        ([-1, 1, 1],  [Some(1), None, None],            1, true,  Verdict::G3AndG5),
        ([-1, 1, 1],  [Some(0), Some(-1), Some(-1)],    1, true,  Verdict::G3AndG5),
        ([-1, 1, 1],  [Some(-1), Some(-1), Some(-1)],   1, true,  Verdict::NotG3AndG5),
        ([-1, 1, -1], [Some(1), Some(1), Some(1)],      0, false, Verdict::G3ImpliesG5),
        ([-1, -1, 1], [Some(-1), Some(-1), Some(-1)],   1, true,  Verdict::NotG3AndG5),
        ([-1, -1, 1], [Some(0), Some(-1), Some(-1)],    1, true,  Verdict::NotG3AndG5),
        ([-1, -1, 1], [Some(1), None, None],            1, true,  Verdict::G3AndG5),
    ];
    let rows = classification_table();
    assert_eq!(rows.len(), expected.len());
    for (row, want) in rows.iter().zip(&expected) {
        assert_eq!(row.signs, want.0);
        assert_eq!(row.regime, want.1);
        assert_eq!(row.a_count, want.2);
        assert_eq!(row.omega_bounded, want.3);
        assert_eq!(row.verdict, want.4);
    }

    // Every row reproduces on its sample; the coefficient-dependent row
    // produces both outcomes.
    let verified = verify_table().unwrap();
    let dependent = verified
        .iter()
        .find(|v| v.spec.verdict == Verdict::G3ImpliesG5)
        .unwrap();
    assert_eq!(dependent.observations.len(), 2);
    assert!(dependent.observations[0].1, "large-a sample must satisfy (G3)");
    assert!(!dependent.observations[1].1, "small-a sample must fail (G3)");

    // Implication sweep: no seeded (−,+,−) draw with r < 6 produces
    // (G3) true with (G5) false.
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..1000 {
        let p = rng.gen_range(2.05..5.5);
        let q = rng.gen_range((p + 0.05)..5.8);
        let r = rng.gen_range((q + 0.05)..5.95);
        let coeffs = [
            (rng.gen_range(0.05f64.ln()..20.0f64.ln())).exp(),
            (rng.gen_range(0.05f64.ln()..20.0f64.ln())).exp(),
            (rng.gen_range(0.05f64.ln()..20.0f64.ln())).exp(),
        ];
        let row = classify_family([-1, 1, -1], [p, q, r], Some(coeffs)).unwrap();
        let (g3, g5) = (row.g3.unwrap(), row.g5.unwrap());
        assert!(
            !(g3 && !g5),
            "implication violated at ({p},{q},{r}) with {coeffs:?}"
        );
    }
    println!("[acceptance] C6 classification table: PASS");
}

#[test]
fn c07_vk_and_thermodynamic_identities() {
    let n = quartic();
    let s1 = vk_slope(&n, 1.0, 1e-3).unwrap();
    assert!((s1 - 0.5).abs() < 1e-4, "vk_slope(1) = {s1}");
    let s4 = vk_slope(&n, 4.0, 4e-3).unwrap();
    assert!((s4 - 0.25).abs() < 1e-4, "vk_slope(4) = {s4}");

    for (name, fam) in certified_families() {
        let (lo, hi) = groundstate::profile::default_omega_window(&fam).unwrap();
        let curve = lambda_curve_in(&fam, lo, hi, 17).unwrap();
        for s in &curve.slopes {
            assert!(*s > -1e-8, "{name}: slope {s} breaks the slope-sign law");
        }
        for e in &curve.energies {
            assert!(*e < 0.0, "{name}: branch energies must be negative, got {e}");
        }
        // dE/dλ = −ω/2 along the branch, centered differences at the
        // design-decision step size.
        for frac in [0.3, 0.5, 0.7] {
            let omega = lo + frac * (hi - lo);
            let h = groundstate::profile::default_slope_step(&fam, omega).unwrap();
            let de = energy_of(&fam, omega + h).unwrap() - energy_of(&fam, omega - h).unwrap();
            let dl = mass_of(&fam, omega + h).unwrap() - mass_of(&fam, omega - h).unwrap();
            let got = de / dl;
            let want = -omega / 2.0;
            assert!(
                ((got - want) / want).abs() < 1e-3,
                "{name}: dE/dλ = {got} at ω = {omega}, want {want}"
            );
        }
    }
    println!("[acceptance] C7 VK and thermodynamic identities: PASS");
}

#[test]
fn c08_spectral_suite() {
    let clock = Instant::now();
    let n = quartic();
    let sol = solve_profile(&n, 1.0, Method::Quadrature, &ProfileConfig::default()).unwrap();
    let r0 = GridFunction::from_fn(20.0, 2001, |x| sol.sample_at(x)).unwrap();
    let report = hessian_spectrum(&n, &r0, 1.0).unwrap();

    assert!(
        (report.eig_min_unrestricted + 3.0).abs() < 1e-3,
        "eig_min = {}",
        report.eig_min_unrestricted
    );
    assert!(report.zero_mode_residual < 1e-3, "zero mode {}", report.zero_mode_residual);
    assert!(report.eig_min_orthogonal > 0.0, "eig_orth = {}", report.eig_min_orthogonal);
    let half_slope = 0.5 * vk_slope(&n, 1.0, 1e-3).unwrap();
    assert!(
        ((report.s0_pairing - half_slope) / half_slope).abs() < 1e-3,
        "⟨S₀,R₀⟩ = {} vs ½dλ/dω = {half_slope}",
        report.s0_pairing
    );
    let elapsed = clock.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "spectral suite took {elapsed:?}");
    println!("[acceptance] C8 spectral suite: PASS");
}

#[test]
fn c09_minimizer_matches_branch() {
    let cfg = ProfileConfig::default();

    // Pure quartic, λ = 1 → ω ≈ 1.
    let n = quartic();
    let result = minimize_on_sphere(&n, 1.0, 20.0, 2001, Init::GaussianBump, 1e-8).unwrap();
    let branch = solve_profile(&n, result.omega_estimate, Method::Quadrature, &cfg).unwrap();
    let dist = grid_distance(&result.u, &branch);
    assert!(dist < 1e-3, "quartic: grid L² distance {dist}");

    // Quartic-sextic with λ inside the branch range, plus the remaining
    // certified family.
    for (fam, omega) in [
        (nl(&[(-1, 1.0, 4.0), (1, 1.0, 6.0)]).unwrap(), 0.3),
        (nl(&[(-1, 1.0, 3.0), (-1, 1.0, 4.0)]).unwrap(), 1.0),
    ] {
        let lambda = mass_of(&fam, omega).unwrap();
        let result =
            minimize_on_sphere(&fam, lambda, 20.0, 2001, Init::GaussianBump, 1e-8).unwrap();
        let branch = solve_profile(&fam, result.omega_estimate, Method::Quadrature, &cfg).unwrap();
        let dist = grid_distance(&result.u, &branch);
        assert!(dist < 1e-3, "{}: grid L² distance {dist}", fam.describe());
    }

    // Peak value for λ = 2 equals √2.
    let result = minimize_on_sphere(&n, 2.0, 20.0, 2001, Init::GaussianBump, 1e-8).unwrap();
    let peak = result.u.values().iter().cloned().fold(0.0, f64::max);
    assert!(
        (peak - std::f64::consts::SQRT_2).abs() < 1e-3,
        "peak = {peak}"
    );
    println!("[acceptance] C9 minimizer/ODE agreement: PASS");
}

fn grid_distance(u: &GridFunction, branch: &groundstate::profile::ProfileSolution) -> f64 {
    let diff: Vec<f64> = (0..u.len())
        .map(|i| u.values()[i] - branch.sample_at(u.node(i)))
        .collect();
    let d = GridFunction::new(u.half_width(), diff).unwrap();
    grid_mass(&d).sqrt()
}

#[test]
fn c10_uniqueness_certificates() {
    for (name, fam) in certified_families() {
        let cert = uniqueness_certificate(&fam, 33).unwrap();
        assert_eq!(
            cert.verdict,
            CertificateVerdict::CertifiedUnique,
            "{name}: {:?}",
            cert.reason
        );
    }

    let bad = nl(&[(1, 1.0, 3.0), (-1, 1.0, 4.0)]).unwrap();
    let cert = uniqueness_certificate(&bad, 17).unwrap();
    assert_eq!(cert.verdict, CertificateVerdict::Inconclusive);
    assert_eq!(cert.reason.as_deref(), Some("G3 fails"));

    // Coefficient-dependent family below its threshold: -s³ + 5s⁴ - s⁵.
    let dependent = nl(&[(-1, 1.0, 3.0), (1, 5.0, 4.0), (-1, 1.0, 5.0)]).unwrap();
    let cert = uniqueness_certificate(&dependent, 9).unwrap();
    assert_eq!(cert.verdict, CertificateVerdict::Inconclusive);
    assert_eq!(cert.reason.as_deref(), Some("G3 fails"));

    // Every (+,−,+) sample with (G1) satisfied fails at (G3).
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..3 {
        let p = rng.gen_range(2.2..5.0);
        let q = p + rng.gen_range(0.2..2.0);
        let r = q + rng.gen_range(0.2..2.0);
        let b = (rng.gen_range(0.2f64.ln()..5.0f64.ln())).exp();
        let c = (rng.gen_range(0.2f64.ln()..5.0f64.ln())).exp();
        let t = groundstate::criteria::infimum_sign_threshold(b, c, p, q, r).unwrap();
        let fam = nl(&[(1, 0.3 * t, p), (-1, b, q), (1, c, r)]).unwrap();
        let cert = uniqueness_certificate(&fam, 9).unwrap();
        assert_eq!(cert.verdict, CertificateVerdict::Inconclusive);
        assert_eq!(cert.reason.as_deref(), Some("G3 fails"), "family {}", fam.describe());
    }
    println!("[acceptance] C10 uniqueness certificates: PASS");
}
