//! Crate-wide error type with CLI exit-code mapping.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("{0} is not prime (required for the affine group)")]
    NotPrime(u64),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("no irreducible catalog for this group kind: {0}")]
    NoCatalog(String),

    #[error("matrix is not unitary (defect {defect:.3e} > tol {tol:.1e}) in {context}")]
    NotUnitary {
        context: String,
        defect: f64,
        tol: f64,
    },

    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        got: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("infeasible system: {0}")]
    Infeasible(String),

    #[error("randomized mode requires a seed: {0}")]
    MissingSeed(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("file format error in {path}: {detail}")]
    FileFormat { path: String, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// CLI exit code: 0 success, 1 invariant failure, 2 config error, 3 budget guard.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded(_) => 3,
            Error::InvariantViolation(_) | Error::NotUnitary { .. } => 1,
            Error::Io(_) => 2,
            _ => 2,
        }
    }
}
