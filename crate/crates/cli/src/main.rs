//! Batch front end: every analysis is a subcommand with deterministic,
//! machine-readable output. Exit codes: 0 verdict computed, 1 certificate
//! inconclusive or hypothesis failed, 2 input error, 3 numerical
//! non-convergence.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use groundstate::criteria::{
    check_conditions, classify_family, lemma_sweep, verify_table, ClassificationRow,
    ConditionReport,
};
use groundstate::nonlinearity::Nonlinearity;
use groundstate::profile::{
    lambda_curve_in, default_omega_window, solve_profile, uniqueness_certificate,
    CertificateVerdict, Method, ProfileConfig,
};
use groundstate::variational::{hessian_spectrum, minimize_on_sphere, GridFunction, Init};
use groundstate::Error;

#[derive(Parser)]
#[command(
    name = "groundstate",
    about = "Ground-state standing waves of the 1D NLS with power nonlinearities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FamilyArgs {
    /// Inline terms `sign*coeff*exponent`, comma separated
    /// (e.g. "-1*1*4" or "+1*1*3,-1*1*4").
    #[arg(long, conflicts_with = "spec_file", allow_hyphen_values = true)]
    terms: Option<String>,
    /// Path to a structured term spec
    /// `{"terms":[{"sign":-1,"coeff":1.0,"exponent":4.0}]}`.
    #[arg(long)]
    spec_file: Option<PathBuf>,
}

impl FamilyArgs {
    fn load(&self) -> Result<Nonlinearity, Error> {
        match (&self.terms, &self.spec_file) {
            (Some(inline), None) => parse_inline_terms(inline),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::input("spec-file", format!("cannot read {}: {e}", path.display()))
                })?;
                Nonlinearity::from_spec_json(&text)
            }
            _ => Err(Error::input(
                "terms",
                "exactly one of --terms or --spec-file is required",
            )),
        }
    }
}

fn parse_inline_terms(text: &str) -> Result<Nonlinearity, Error> {
    let mut terms = Vec::new();
    for (i, chunk) in text.split(',').enumerate() {
        let parts: Vec<&str> = chunk.trim().split('*').collect();
        if parts.len() != 3 {
            return Err(Error::input(
                format!("terms[{i}]"),
                format!("expected sign*coeff*exponent, got `{chunk}`"),
            ));
        }
        let sign: i8 = parts[0]
            .trim()
            .parse()
            .map_err(|_| Error::input(format!("terms[{i}].sign"), "sign must be -1, 0 or +1"))?;
        let coeff: f64 = parts[1].trim().parse().map_err(|_| {
            Error::input(format!("terms[{i}].coeff"), "coefficient must be a number")
        })?;
        let exponent: f64 = parts[2].trim().parse().map_err(|_| {
            Error::input(format!("terms[{i}].exponent"), "exponent must be a number")
        })?;
        terms.push(groundstate::PowerTerm { sign, coeff, exponent });
    }
    Nonlinearity::new(terms)
}

#[derive(Subcommand)]
enum Command {
    /// Decide the hypotheses (G1), (G2b), (G3), (G4'), (G5) and report Ω.
    Check {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Classify the sign pattern against the table.
    Classify {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Compute the profile R_ω and export `x,R` samples.
    Profile {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        omega: f64,
        /// quadrature | shooting
        #[arg(long, default_value = "quadrature")]
        method: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the branch ω ↦ (R_*, λ, E, dλ/dω).
    Curve {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 33)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Produce the uniqueness certificate.
    Certify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 33)]
        points: usize,
    },
    /// Direct energy minimization on the L² sphere.
    Minimize {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        lambda: f64,
        #[arg(long = "grid-halfwidth", default_value_t = 20.0)]
        grid_halfwidth: f64,
        #[arg(long = "grid-n", default_value_t = 2001)]
        grid_n: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Discretized L₊ diagnostics at one branch point.
    Spectrum {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        omega: f64,
        #[arg(long = "grid-halfwidth", default_value_t = 20.0)]
        grid_halfwidth: f64,
        #[arg(long = "grid-n", default_value_t = 2001)]
        grid_n: usize,
    },
    /// Seeded sweep of the two-sided bound on M(x, y, z).
    Lemma {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10000)]
        points: usize,
    },
    /// Emit the full classification table with verified verdicts.
    Table,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::NonConvergence(_) | Error::InconsistentBranch(_) | Error::Inconsistency(_) => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_or_print(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::input("out", format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn print_condition_report(report: &ConditionReport) {
    println!("G1: {}", report.g1);
    if let Some(w) = report.g1_witness {
        println!("G1 witness s0: {}", fmt(w));
    }
    println!("G2b: {}", report.g2b);
    println!("G3: {}", report.g3);
    if let Some(w) = report.g3_witness {
        println!("G3 witness s: {}", fmt(w));
    }
    println!("G4': {}", report.g4);
    println!("G5: {}", report.g5);
    let a: Vec<String> = report.a_set.iter().map(|s| fmt(*s)).collect();
    println!("A: {{{}}}", a.join(", "));
    if report.omega.bounded {
        println!("Omega: (0, {})", fmt(report.omega.upper));
    } else {
        println!("Omega: (0, +inf)");
    }
}

fn sign_token(s: i8) -> char {
    match s {
        -1 => '-',
        0 => '0',
        _ => '+',
    }
}

fn regime_token(r: Option<i8>) -> char {
    match r {
        Some(-1) => '-',
        Some(0) => '0',
        Some(_) => '+',
        None => '.',
    }
}

fn table_line(
    signs: [i8; 3],
    regime: [Option<i8>; 3],
    a_count: u8,
    bounded: bool,
    verdict: &str,
) -> String {
    format!(
        "{}{}{},{},{},{},{},{},{}",
        sign_token(signs[0]),
        sign_token(signs[1]),
        sign_token(signs[2]),
        regime_token(regime[0]),
        regime_token(regime[1]),
        regime_token(regime[2]),
        a_count,
        if bounded { "bounded" } else { "unbounded" },
        verdict
    )
}

fn print_classification(row: &ClassificationRow) {
    println!(
        "{}",
        table_line(row.signs, row.regime, row.a_count, row.omega_bounded, &row.verdict.to_string())
    );
    if let Some(g3) = row.g3 {
        println!("G3 (these coefficients): {g3}");
    }
    if let Some(g5) = row.g5 {
        println!("G5 (these coefficients): {g5}");
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Check { family } => {
            let n = family.load()?;
            println!("G: {}", n.describe());
            println!("spec: {}", n.to_spec_json());
            let report = check_conditions(&n)?;
            print_condition_report(&report);
            println!("all hypotheses hold: {}", report.all_hold());
            Ok(if report.all_hold() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Classify { family } => {
            let n = family.load()?;
            let mut signs = [0i8; 3];
            let mut exponents = [3.0, 4.0, 5.0];
            let mut coeffs = [1.0f64; 3];
            for (i, t) in n.terms().iter().enumerate() {
                signs[i] = t.sign;
                exponents[i] = t.exponent;
                coeffs[i] = t.coeff;
            }
            let row = classify_family(signs, exponents, Some(coeffs))?;
            println!("G: {}", n.describe());
            print_classification(&row);
            Ok(ExitCode::SUCCESS)
        }
        Command::Profile { family, omega, method, out } => {
            let n = family.load()?;
            let method = match method.as_str() {
                "quadrature" => Method::Quadrature,
                "shooting" => Method::Shooting,
                other => {
                    return Err(Error::input(
                        "method",
                        format!("expected quadrature or shooting, got `{other}`"),
                    ))
                }
            };
            let sol = solve_profile(&n, omega, method, &ProfileConfig::default())?;
            println!("omega: {}", fmt(sol.omega));
            println!("r_star: {}", fmt(sol.r_star));
            println!("mass: {}", fmt(sol.mass));
            println!("energy: {}", fmt(sol.energy));
            println!("residual_first_integral: {}", fmt(sol.residual_first_integral));
            println!("nodes: {}", sol.xs.len());
            if out.is_some() {
                write_or_print(&out, &sol.to_csv())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Curve { family, points, out } => {
            let n = family.load()?;
            let (lo, hi) = default_omega_window(&n)?;
            let curve = lambda_curve_in(&n, lo, hi, points)?;
            println!("monotone: {}", curve.monotone);
            println!("min_slope: {}", fmt(curve.min_slope()));
            write_or_print(&out, &curve.to_csv())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify { family, points } => {
            let n = family.load()?;
            let cert = uniqueness_certificate(&n, points)?;
            println!("G: {}", cert.description);
            println!("verdict: {}", cert.verdict);
            if let Some(reason) = &cert.reason {
                println!("reason: {reason}");
            }
            if let Some(slope) = cert.min_slope {
                println!("min_slope: {}", fmt(slope));
            }
            println!("points: {}", cert.n_points);
            Ok(match cert.verdict {
                CertificateVerdict::CertifiedUnique => ExitCode::SUCCESS,
                CertificateVerdict::Inconclusive => ExitCode::from(1),
            })
        }
        Command::Minimize { family, lambda, grid_halfwidth, grid_n, tol, out } => {
            let n = family.load()?;
            let result =
                minimize_on_sphere(&n, lambda, grid_halfwidth, grid_n, Init::GaussianBump, tol)?;
            println!("lambda: {}", fmt(result.lambda_target));
            println!("omega_estimate: {}", fmt(result.omega_estimate));
            println!("energy: {}", fmt(result.energy));
            println!("gradient_residual: {}", fmt(result.gradient_residual));
            println!("iterations: {}", result.iterations);
            let peak = result.u.values().iter().cloned().fold(0.0f64, f64::max);
            println!("peak: {}", fmt(peak));
            if result.flat_warning {
                println!("warning: energy not below the zero state; lambda may be below lambda_*");
            }
            if out.is_some() {
                let mut csv = String::from("x,R\n");
                for i in 0..result.u.len() {
                    csv.push_str(&format!("{},{}\n", fmt(result.u.node(i)), fmt(result.u.values()[i])));
                }
                write_or_print(&out, &csv)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Spectrum { family, omega, grid_halfwidth, grid_n } => {
            let n = family.load()?;
            let sol = solve_profile(&n, omega, Method::Quadrature, &ProfileConfig::default())?;
            let r0 = GridFunction::from_fn(grid_halfwidth, grid_n, |x| sol.sample_at(x))?;
            let report = hessian_spectrum(&n, &r0, omega)?;
            println!("eig_min_unrestricted: {}", fmt(report.eig_min_unrestricted));
            println!("eig_min_orthogonal: {}", fmt(report.eig_min_orthogonal));
            println!("zero_mode_residual: {}", fmt(report.zero_mode_residual));
            println!("lplus_s0_residual: {}", fmt(report.lplus_s0_residual));
            println!("s0_pairing: {}", fmt(report.s0_pairing));
            Ok(ExitCode::SUCCESS)
        }
        Command::Lemma { seed, points } => {
            let sweep = lemma_sweep(seed, points, points / 10);
            println!("interior_samples: {}", sweep.interior_samples);
            println!("boundary_samples: {}", sweep.boundary_samples);
            println!("max_interior: {}", fmt(sweep.max_interior));
            println!("max_boundary_deviation: {}", fmt(sweep.max_boundary_deviation));
            let (x, y, z) = sweep.worst_interior;
            println!("worst_interior: ({}, {}, {})", fmt(x), fmt(y), fmt(z));
            let ok = sweep.max_interior <= 1.0 + 1e-12 && sweep.max_boundary_deviation <= 1e-12;
            println!("bound holds: {ok}");
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Table => {
            let rows = verify_table()?;
            println!("signs,6-p,6-q,6-r,#A,omega,verdict");
            for row in &rows {
                println!(
                    "{}",
                    table_line(
                        row.spec.signs,
                        row.spec.regime,
                        row.spec.a_count,
                        row.spec.omega_bounded,
                        &row.spec.verdict.to_string()
                    )
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
