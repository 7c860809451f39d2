use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{family}: {constraint}")]
    Constraint {
        family: &'static str,
        constraint: String,
    },

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("{path}:{line}: {message}")]
    EdgeList {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0} is not a prime below 2^63")]
    NotPrime(u64),

    #[error("matrix entry ({row}, {col}) outside {rows}x{cols}")]
    MatrixIndex {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("duplicate column {col} in row {row}")]
    DuplicateEntry { row: usize, col: usize },

    #[error("{kind} is not defined for n = {n}")]
    OutOfDomain { kind: &'static str, n: usize },

    #[error("{kind} n = {n} is outside the tabulated range {min}..={max}")]
    NotTabulated {
        kind: &'static str,
        n: usize,
        min: usize,
        max: usize,
    },

    #[error(
        "exceeded budget: degree {degree} has basis size {size} > {limit}; \
         rank deficiency cannot be certified without raising --max-basis"
    )]
    BudgetExceeded {
        degree: usize,
        size: usize,
        limit: usize,
    },

    #[error("degree {degree} exceeds the socle degree {socle}")]
    DegreeOutOfRange { degree: usize, socle: usize },

    #[error("inconsistent result: {0}")]
    Inconsistent(String),
}
