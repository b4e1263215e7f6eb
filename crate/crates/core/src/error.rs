use thiserror::Error;

use crate::factor::Factorization;

/// Errors raised by the algebra routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(String),
    #[error("invalid ring specification: {0}")]
    InvalidRing(String),
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("input must not be a unit")]
    UnitInput,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("suspension function f must be nonzero")]
    ZeroF,
    #[error("suspension function f is invertible (Laurent ring): {0}")]
    UnitF(String),
    #[error("elements belong to different towers or levels")]
    TowerMismatch,
    #[error("not a unique factorization domain: f = {witness} is not prime")]
    NotUfd { witness: Factorization },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("inconsistent input: {0}")]
    Consistency(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Stable machine-readable code for rendering.
    pub fn code(&self) -> &'static str {
        match self {
            Error::RingMismatch(_) => "ring_mismatch",
            Error::DivisionByZero => "division_by_zero",
            Error::UnknownVariable(_) => "unknown_variable",
            Error::MissingAssignment(_) => "missing_assignment",
            Error::InvalidRing(_) => "invalid_ring",
            Error::ZeroInput => "zero_input",
            Error::UnitInput => "unit_input",
            Error::ResourceLimit(_) => "resource_limit",
            Error::ZeroF => "zero_f",
            Error::UnitF(_) => "unit_f",
            Error::TowerMismatch => "tower_mismatch",
            Error::NotUfd { .. } => "not_ufd",
            Error::Unsupported(_) => "unsupported",
            Error::Consistency(_) => "consistency",
            Error::Precondition(_) => "precondition",
            Error::Syntax { .. } => "syntax",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
