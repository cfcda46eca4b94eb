use thiserror::Error;

/// Errors raised by constructors, witnesses, searches and input parsing.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("Bloch vector norm {norm} exceeds 1")]
    BlochOutOfBall { norm: f64 },

    #[error("operator is not positive semidefinite (min eigenvalue {min_eigenvalue})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("conditioning probability p({outcome}|{setting}) = {probability} is zero")]
    ZeroConditioningProbability {
        setting: usize,
        outcome: usize,
        probability: f64,
    },

    #[error("value {value} outside domain: {what}")]
    DomainError { what: &'static str, value: f64 },

    #[error("degenerate marginal: 1 - a_{index}^2 = {value}")]
    DegenerateMarginal { index: usize, value: f64 },

    #[error("degenerate denominator {value}")]
    DegenerateDenominator { value: f64 },

    #[error("unsupported number of encoded bits n = {0}")]
    UnsupportedN(u32),

    #[error("configuration error: {0}")]
    ConfigError(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error: {0}")]
    ParseError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
