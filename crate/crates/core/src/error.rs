use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid degree {0}: must be between 1 and {max}", max = crate::frequency::MAX_DEGREE)]
    InvalidDegree(u64),

    #[error("frequencies must be strictly positive, got {0:?}")]
    NonPositiveFrequency(Vec<u64>),

    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("shape mismatch: expected {expected} {what}, got {got}")]
    Shape {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("expected a {expected} series, got {got}")]
    SeriesKind {
        expected: &'static str,
        got: &'static str,
    },

    #[error("tuple maximum {max} exceeds the small-solution bound {bound}")]
    BoundViolation { max: u64, bound: u64 },

    #[error("search needs {required} checks, above the limit of {limit}")]
    SearchLimit { required: u128, limit: u128 },

    #[error("function evaluation failed at lattice node {node}: {message}")]
    Evaluation { node: usize, message: String },

    #[error("numerical rank deficiency at step {step} of {size} (pivot {pivot:e})")]
    RankDeficient {
        step: usize,
        size: usize,
        pivot: f64,
    },

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("empty {0}")]
    Empty(&'static str),

    #[error("malformed input at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
