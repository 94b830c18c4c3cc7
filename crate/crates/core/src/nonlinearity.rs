//! Power-combination nonlinearities `G(s) = Σᵢ εᵢ aᵢ s^{pᵢ}` and the scalar
//! functions derived from them.
//!
//! The derived functions used throughout the crate are
//!
//! ```text
//! V(s) = -2 G(s) / s²            (level sets give the profile peak R_*)
//! L(s) = 12 G(s) - 7 s G'(s) + s² G''(s)
//! K(s) = s⁻² (-6 G(s) + s G'(s)),   K'(s) = L(s) / s³
//! ```
//!
//! For a single term ε a s^p these reduce to ε a (p-2)(p-6) s^p for L and
//! ε a (p-6) s^{p-2} for K, which is how they are evaluated: termwise, in
//! closed form, never by numerical differentiation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::powersum::PowerSum;

/// One signed power term `sign * coeff * s^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerTerm {
    /// −1, 0 or +1; zero terms are dropped at construction.
    pub sign: i8,
    /// Strictly positive amplitude.
    pub coeff: f64,
    /// Strictly greater than 2.
    pub exponent: f64,
}

impl PowerTerm {
    pub fn new(sign: i8, coeff: f64, exponent: f64) -> Result<Self> {
        if !matches!(sign, -1..=1) {
            return Err(Error::input("sign", "sign must be -1, 0 or +1"));
        }
        if !coeff.is_finite() || coeff <= 0.0 {
            return Err(Error::input("coeff", "coefficient must be positive and finite"));
        }
        if !exponent.is_finite() || exponent <= 2.0 {
            return Err(Error::input("exponent", "exponent must exceed 2"));
        }
        Ok(PowerTerm { sign, coeff, exponent })
    }

    /// Signed amplitude ε·a.
    fn signed_coeff(&self) -> f64 {
        f64::from(self.sign) * self.coeff
    }
}

/// Container mirroring the on-disk structured-text format
/// `{"terms":[{"sign":-1,"coeff":1.0,"exponent":4.0}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermsSpec {
    pub terms: Vec<PowerTerm>,
}

/// A validated nonlinearity: one to three terms, exponents strictly
/// increasing, zero-sign terms removed.
#[derive(Debug, Clone, PartialEq)]
pub struct Nonlinearity {
    terms: Vec<PowerTerm>,
}

/// Closed-form values of G and its derived functions at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedValues {
    pub g: f64,
    pub dg: f64,
    pub d2g: f64,
    pub v: f64,
    pub dv: f64,
    pub l: f64,
    pub k: f64,
}

impl Nonlinearity {
    pub fn new(terms: impl IntoIterator<Item = PowerTerm>) -> Result<Self> {
        let mut terms: Vec<PowerTerm> = terms.into_iter().filter(|t| t.sign != 0).collect();
        if terms.is_empty() {
            return Err(Error::input("terms", "at least one nonzero term is required"));
        }
        if terms.len() > 3 {
            return Err(Error::input("terms", "at most three terms are supported"));
        }
        for (i, t) in terms.iter().enumerate() {
            // Re-validate in case the struct was built by hand.
            PowerTerm::new(t.sign, t.coeff, t.exponent)
                .map_err(|e| prefix_field(e, &format!("terms[{i}]")))?;
        }
        terms.sort_by(|a, b| a.exponent.total_cmp(&b.exponent));
        for win in terms.windows(2) {
            if win[0].exponent == win[1].exponent {
                return Err(Error::input(
                    "exponent",
                    format!("duplicate exponent {} is not allowed", win[0].exponent),
                ));
            }
        }
        Ok(Nonlinearity { terms })
    }

    /// Parses the structured-text term spec.
    pub fn from_spec_json(text: &str) -> Result<Self> {
        let spec: TermsSpec = serde_json::from_str(text)
            .map_err(|e| Error::input("terms", format!("malformed term spec: {e}")))?;
        Nonlinearity::new(spec.terms)
    }

    /// Emits the structured-text term spec; re-parsing it reproduces `self`.
    pub fn to_spec_json(&self) -> String {
        serde_json::to_string(&TermsSpec { terms: self.terms.clone() })
            .expect("term spec serialization cannot fail")
    }

    pub fn terms(&self) -> &[PowerTerm] {
        &self.terms
    }

    /// Signs of the surviving terms, ordered by exponent.
    pub fn sign_pattern(&self) -> Vec<i8> {
        self.terms.iter().map(|t| t.sign).collect()
    }

    /// Exponents of the surviving terms, ascending.
    pub fn exponents(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.exponent).collect()
    }

    /// A human-readable rendering such as `-1.0*s^4 + 1.0*s^6`.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            if i == 0 {
                if t.sign < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if t.sign < 0 { " - " } else { " + " });
            }
            out.push_str(&format!("{}*s^{}", t.coeff, t.exponent));
        }
        out
    }

    // --- pointwise evaluation -------------------------------------------

    pub fn g(&self, s: f64) -> f64 {
        self.terms.iter().map(|t| t.signed_coeff() * s.powf(t.exponent)).sum()
    }

    pub fn g_prime(&self, s: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.signed_coeff() * t.exponent * s.powf(t.exponent - 1.0))
            .sum()
    }

    pub fn g_double_prime(&self, s: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.signed_coeff() * t.exponent * (t.exponent - 1.0) * s.powf(t.exponent - 2.0))
            .sum()
    }

    pub fn v(&self, s: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| -2.0 * t.signed_coeff() * s.powf(t.exponent - 2.0))
            .sum()
    }

    pub fn v_prime(&self, s: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| -2.0 * t.signed_coeff() * (t.exponent - 2.0) * s.powf(t.exponent - 3.0))
            .sum()
    }

    pub fn l(&self, s: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                t.signed_coeff() * (t.exponent - 2.0) * (t.exponent - 6.0) * s.powf(t.exponent)
            })
            .sum()
    }

    pub fn k(&self, s: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.signed_coeff() * (t.exponent - 6.0) * s.powf(t.exponent - 2.0))
            .sum()
    }

    /// W(s) = ω s² + 2 G(s) = s² (ω − V(s)); the first integral of the
    /// profile equation reads (R')² = W(R).
    pub fn w(&self, omega: f64, s: f64) -> f64 {
        omega * s * s + 2.0 * self.g(s)
    }

    /// All derived values at one point. V and K are undefined at s = 0.
    pub fn evaluate(&self, s: f64) -> Result<DerivedValues> {
        if !s.is_finite() || s <= 0.0 {
            return Err(Error::Domain(format!(
                "derived values require s > 0 (V and K are undefined at 0); got {s}"
            )));
        }
        Ok(DerivedValues {
            g: self.g(s),
            dg: self.g_prime(s),
            d2g: self.g_double_prime(s),
            v: self.v(s),
            dv: self.v_prime(s),
            l: self.l(s),
            k: self.k(s),
        })
    }

    // --- term-level views used by the sign analysis ---------------------

    pub fn g_powersum(&self) -> PowerSum {
        PowerSum::new(self.terms.iter().map(|t| (t.signed_coeff(), t.exponent)))
    }

    pub fn g_prime_powersum(&self) -> PowerSum {
        self.g_powersum().derivative()
    }

    pub fn v_powersum(&self) -> PowerSum {
        PowerSum::new(
            self.terms
                .iter()
                .map(|t| (-2.0 * t.signed_coeff(), t.exponent - 2.0)),
        )
    }

    pub fn v_prime_powersum(&self) -> PowerSum {
        self.v_powersum().derivative()
    }

    pub fn l_powersum(&self) -> PowerSum {
        PowerSum::new(self.terms.iter().map(|t| {
            (
                t.signed_coeff() * (t.exponent - 2.0) * (t.exponent - 6.0),
                t.exponent,
            )
        }))
    }

    pub fn w_powersum(&self, omega: f64) -> PowerSum {
        PowerSum::new(
            self.terms
                .iter()
                .map(|t| (2.0 * t.signed_coeff(), t.exponent))
                .chain([(omega, 2.0)]),
        )
    }
}

fn prefix_field(err: Error, prefix: &str) -> Error {
    match err {
        Error::Input { field, reason } => Error::Input {
            field: format!("{prefix}.{field}"),
            reason,
        },
        other => other,
    }
}

/// Convenience constructor used pervasively in tests and the CLI:
/// `nl(&[(-1, 1.0, 4.0)])` is G(s) = −s⁴.
pub fn nl(terms: &[(i8, f64, f64)]) -> Result<Nonlinearity> {
    Nonlinearity::new(
        terms
            .iter()
            .map(|&(s, c, e)| PowerTerm { sign: s, coeff: c, exponent: e }),
    )
}
