use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: defect {defect:.3e} exceeds {tolerance:.1e}")]
    NotHermitian { defect: f64, tolerance: f64 },

    #[error("degenerate fixed-point family: lambda3 = 1")]
    DegenerateFixedPoint,

    #[error("fixed point has Bloch z-component {0}, outside the unit ball")]
    FixedPointNotAState(f64),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid rates: {0}")]
    InvalidRates(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("length mismatch: expected {expected} samples, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("map is non-invertible at t = {0}")]
    NonInvertible(f64),

    #[error("time {0} is not a grid point")]
    OffGrid(f64),

    #[error("propagator requires t >= s (got t = {t}, s = {s})")]
    TimeOrder { t: f64, s: f64 },

    #[error("rate trajectory is missing {0} grid points")]
    IncompleteRates(usize),

    #[error("invalid eta function: {0}")]
    InvalidEta(String),

    #[error("commutativity constant undetermined: eta1 is constant (eta2 constant: {eta2_constant})")]
    UndeterminedConstant { eta2_constant: bool },

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
