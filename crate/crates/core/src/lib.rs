//! Ground-state standing waves of the one-dimensional nonlinear
//! Schrödinger equation with power-combination nonlinearities.
//!
//! A standing wave e^{iωt}u(x) with positive even profile R solves
//!
//! ```text
//! R'' - G'(R) - ω R = 0,     R'(0) = 0,  R(0) = R_*(ω),
//! ```
//!
//! where G is the radial nonlinearity and R_*(ω) is the least positive
//! solution of V(s) = ω with V(s) = −2G(s)/s². This crate decides the
//! hypotheses (G1), (G2b), (G3), (G4'), (G5) for signed sums of up to three
//! powers, computes the profile branch ω ↦ R_ω together with the mass curve
//! λ(ω) = ‖R_ω‖₂² and its Vakhitov–Kolokolov slope, classifies sign
//! patterns against the closed-form threshold algebra, and cross-checks
//! everything with an independent grid-based route: direct energy
//! minimization on the L² sphere and the spectrum of the linearized
//! operator L₊ = −d²/dx² + G''(R₀) + ω₀.
//!
//! Modules:
//! - [`nonlinearity`]: G and the derived scalar functions V, L, K.
//! - [`criteria`]: hypothesis checkers, thresholds, the classification table.
//! - [`profile`]: ODE branch, mass/energy curves, uniqueness certificates.
//! - [`variational`]: sphere-constrained minimization and L₊ diagnostics.
//!
//! ```
//! use groundstate::nl;
//! use groundstate::criteria::check_conditions;
//! use groundstate::profile::{mass_of, uniqueness_certificate, CertificateVerdict};
//!
//! // G(s) = -s^4: the cubic NLS in disguise, with the sech soliton branch.
//! let g = nl(&[(-1, 1.0, 4.0)]).unwrap();
//! let report = check_conditions(&g).unwrap();
//! assert!(report.all_hold());
//! assert!((mass_of(&g, 4.0).unwrap() - 2.0).abs() < 1e-8); // λ(ω) = √ω
//!
//! let cert = uniqueness_certificate(&g, 17).unwrap();
//! assert_eq!(cert.verdict, CertificateVerdict::CertifiedUnique);
//! ```

pub mod criteria;
pub mod error;
pub mod nonlinearity;
pub mod powersum;
pub mod profile;
pub mod quadrature;
pub mod variational;

pub use error::{Error, Result};
pub use nonlinearity::{nl, DerivedValues, Nonlinearity, PowerTerm, TermsSpec};
