//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by parsing, hypothesis checks, branch computations and
/// grid solvers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A field of some input failed validation. `field` names the offender.
    #[error("invalid input `{field}`: {reason}")]
    Input { field: String, reason: String },

    /// An argument left the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A level-set equation has no solution (e.g. V(s) = omega never holds).
    #[error("no crossing: {0}")]
    NoCrossing(String),

    /// The nonlinearity admits no ground-state branch.
    #[error("no admissible branch: {0}")]
    NoBranch(String),

    /// A finite-difference step left the admissible frequency interval.
    #[error("step error: {0}")]
    Step(String),

    /// Two grid functions live on incompatible grids.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// The positivity structure W > 0 on (0, R_*) failed inside the branch.
    #[error("inconsistent branch: {0}")]
    InconsistentBranch(String),

    /// An iterative solver hit its cap without meeting its tolerance.
    #[error("did not converge: {0}")]
    NonConvergence(String),

    /// Two independent routes to the same verdict disagreed.
    #[error("internal consistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn input(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Input {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
