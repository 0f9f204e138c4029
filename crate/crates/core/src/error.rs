use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sample has {n} observations, at least {required} are needed")]
    InsufficientSample { n: usize, required: usize },

    #[error("observation {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("order k = {k} is outside the supported range {min}..={max}")]
    OrderOutOfRange { k: usize, min: usize, max: usize },

    #[error("exact subset counts overflow 128 bits for n = {n}, degree {degree}")]
    CountOverflow { n: usize, degree: usize },

    #[error("brute-force enumeration of {size} terms exceeds the limit of {limit}")]
    InstanceTooLarge { size: u128, limit: u128 },

    #[error("null table is for {table}, statistic is {statistic}")]
    TableMismatch { table: String, statistic: String },

    #[error("family `{0}` has no finite Fisher information for location")]
    UnsupportedFamily(&'static str),

    #[error("unknown distribution family `{0}`")]
    UnknownFamily(String),

    #[error("quadrature did not converge: estimate {estimate}, error bound {error}")]
    QuadratureFailure { estimate: f64, error: f64 },

    #[error("maximization failed: {0}")]
    Optimization(String),

    #[error("variance function for k = {k} has {count} local maxima on [0, 1]")]
    MultipleMaxima { k: usize, count: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("sample file contains no observations")]
    EmptyInput,

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
