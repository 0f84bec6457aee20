use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {index} exceeds the per-symbol cap of {cap}")]
    IndexCap { index: u64, cap: u32 },

    #[error("rank is infinite: band term {symbol} survives the substitution eps = {eps}")]
    BandTermSurvives { symbol: String, eps: String },

    #[error("parse error at position {pos} near `{token}`: {message}")]
    Parse { pos: usize, token: String, message: String },

    #[error("index {index} does not fit a truncation of dimension {n}")]
    Truncation { index: u32, n: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("dimension {n} exceeds the limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("power iteration did not converge in {iterations} iterations (last estimate {last_estimate})")]
    NoConvergence { iterations: usize, last_estimate: f64 },

    #[error("QR iteration stalled: subdiagonal entry ({row}, {col}) still {magnitude:e} after {sweeps} sweeps")]
    QrStall { row: usize, col: usize, magnitude: f64, sweeps: usize },

    #[error("the zero vector has no orbit")]
    ZeroVector,

    #[error("{0}")]
    Invalid(String),
}
