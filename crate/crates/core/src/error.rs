use thiserror::Error;

use crate::poly::Variable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("no binding for variable {0}")]
    MissingBinding(Variable),

    #[error("variable {var} is outside the generators x0..x{max}")]
    VariableOutOfRange { var: Variable, max: usize },

    #[error("matrix is not square ({rows} rows, row {row} has {cols} entries)")]
    NotSquare { rows: usize, row: usize, cols: usize },

    #[error("empty matrix")]
    EmptyMatrix,

    #[error("inexact polynomial division")]
    InexactDivision,

    #[error("series division by a series with zero constant term")]
    ZeroConstantTerm,

    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstantTerm,

    #[error("series orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),

    #[error("invalid slice: {0}")]
    InvalidSlice(String),

    #[error("derivation {0} is not triangular")]
    NotTriangular(String),

    #[error("localized values have different pivots")]
    PivotMismatch,

    #[error("internal check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
