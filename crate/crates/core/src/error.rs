use thiserror::Error;

/// Errors produced by the inference library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZcdError {
    /// An argument lies outside the mathematical domain of the function.
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    /// A bracketed root search ran out of iterations.
    #[error(
        "root finder did not converge after {iterations} iterations; last bracket [{lo:e}, {hi:e}]"
    )]
    NoConvergence { iterations: usize, lo: f64, hi: f64 },

    /// Adaptive quadrature exhausted its panel budget before meeting the tolerance.
    #[error("quadrature did not converge after {panels} panels: partial sum {partial:e}, error estimate {error_estimate:e}")]
    Quadrature {
        panels: usize,
        partial: f64,
        error_estimate: f64,
    },

    /// A series over the Poisson support could not be truncated within the term budget.
    #[error("Poisson expectation did not converge by x = {max_x} (tail bound {tail_bound:e})")]
    Truncation { max_x: u64, tail_bound: f64 },

    /// The posterior cannot be normalized because the evidence integral diverges.
    #[error("improper posterior: {reason}")]
    ImproperPosterior { reason: String },

    /// An improper posterior was hit inside a coverage run.
    #[error("improper posterior in replicate {replicate}: {reason}")]
    ImproperReplicate { replicate: u64, reason: String },

    /// Malformed user input (empty data, non-positive durations, bad levels).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl ZcdError {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        ZcdError::Domain {
            func,
            detail: detail.into(),
        }
    }

    /// True for failures of a numerical algorithm, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            ZcdError::NoConvergence { .. }
                | ZcdError::Quadrature { .. }
                | ZcdError::Truncation { .. }
        )
    }

    /// True when the error reports a non-normalizable posterior.
    pub fn is_improper(&self) -> bool {
        matches!(
            self,
            ZcdError::ImproperPosterior { .. } | ZcdError::ImproperReplicate { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, ZcdError>;
