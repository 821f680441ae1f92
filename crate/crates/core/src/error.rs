use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dimension {0}: must be at least 1")]
    InvalidDimension(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid order {n}: must be at least {min}")]
    InvalidOrder { n: usize, min: usize },

    #[error("order {0} is not supported by this routine")]
    UnsupportedOrder(usize),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("Bloch vector {index} has norm {norm}, expected a unit vector")]
    NonUnitBloch { index: usize, norm: f64 },

    #[error("need at least {min} states, got {found}")]
    TooFewStates { min: usize, found: usize },

    #[error("empty point set")]
    EmptySet,

    #[error("degenerate elliptical disk (|c| = {focus_modulus}, s = {sum})")]
    DegenerateDisk { focus_modulus: f64, sum: f64 },

    #[error("parameter out of range at theta = {theta}: cos^2 t = {value} is outside [0, 1]")]
    OutOfRange { theta: f64, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no envelope point at theta = {theta}: {reason}")]
    NoEnvelopePoint { theta: f64, reason: String },

    #[error("degenerate hull with {vertices} vertices")]
    DegenerateHull { vertices: usize },
}
