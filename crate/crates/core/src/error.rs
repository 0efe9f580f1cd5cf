use thiserror::Error;

use crate::complex::Cell;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cell {0:?} repeats a vertex")]
    MalformedCell(Vec<usize>),

    #[error("vertex {vertex} out of range for a complex on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid dimension {dim}: {reason}")]
    InvalidDimension { dim: isize, reason: String },

    #[error("{0} is not a cell of the complex")]
    NotACell(Cell),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("shape mismatch: expected {expected:?}, got {found:?}")]
    Shape {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("enumeration needs {needed} candidates, budget is {budget}; use local search")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("link of {0} is degenerate (fewer than two vertices)")]
    DegenerateLink(Cell),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("spectral-gap routes disagree: {0}")]
    RouteDisagreement(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
