use thiserror::Error;

use crate::Complex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at {0}")]
    GammaPole(Complex),

    #[error("series did not converge: last term magnitude {last_term:e} after {terms} terms")]
    NonConvergence { terms: usize, last_term: f64 },

    #[error("quadrature tolerance {tol:e} not met (error estimate {estimate:e})")]
    ToleranceNotMet { tol: f64, estimate: f64 },

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("leading coefficient of divisor is zero")]
    ZeroLeadingCoefficient,

    #[error("constant term must be 1, got {0}")]
    NotNormalized(Complex),

    #[error("constant term must be 0, got {0}")]
    NonzeroConstant(Complex),

    #[error("function is not normalized (expected z + a2 z^2 + ...): {0}")]
    NotClassA(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("vanishing denominator at coefficient {0}")]
    VanishingDenominator(usize),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
}

impl Error {
    /// Stable machine-readable tag, used in the CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::GammaPole(_) => "gamma-pole",
            Error::NonConvergence { .. } => "non-convergence",
            Error::ToleranceNotMet { .. } => "tolerance-not-met",
            Error::OrderMismatch { .. } => "order-mismatch",
            Error::ZeroLeadingCoefficient => "zero-leading-coefficient",
            Error::NotNormalized(_) => "not-normalized",
            Error::NonzeroConstant(_) => "nonzero-constant",
            Error::NotClassA(_) => "not-class-a",
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::InvalidMeasure(_) => "invalid-measure",
            Error::VanishingDenominator(_) => "vanishing-denominator",
            Error::HypothesisViolation(_) => "hypothesis-violation",
            Error::NonFinite(_) => "non-finite",
        }
    }
}
