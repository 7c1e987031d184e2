use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input")]
    NonFinite,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not skew-symmetric (residual {0:e})")]
    NotSkew(f64),

    #[error("matrix is not symmetric (residual {0:e})")]
    NotSymmetric(f64),

    #[error("matrix is not Hermitian (residual {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("linear map is singular")]
    Singular,

    #[error("linear map does not preserve the cone axis")]
    NotAxisPreserving,

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("the norm bound requires odd matrix size, got {0}")]
    EvenSize(usize),

    #[error("zero tensor")]
    ZeroTensor,

    #[error("degenerate calibration: axis coordinate {0:e} after shift")]
    DegenerateCalibration(f64),

    #[error("dual element is not normalized (x000 = {0})")]
    NotNormalized(f64),

    #[error("invalid qubit subset: {0}")]
    BadSubset(String),

    #[error("unsupported qubit count {0}")]
    QubitCount(usize),

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
