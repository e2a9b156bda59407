use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("entry count {got} does not match dim² = {expected}")]
    InvalidLength { expected: usize, got: usize },

    #[error("matrix is not Hermitian (max |M_ij - conj(M_ji)| = {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("not a state: {0}")]
    NotAState(String),

    #[error("parameter {name} = {value} outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("local dimension d = {d} not supported here (requires {required})")]
    DimensionUnsupported { d: usize, required: &'static str },

    #[error("parse error: {0}")]
    Parse(String),
}
