use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not skew-symmetrizable: {0}")]
    NotSkewSymmetrizable(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("direction {k} out of range 1..={n}")]
    DirectionOutOfRange { k: usize, n: usize },
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("negative exponent in an ordinary polynomial")]
    NegativeExponent,
    #[error("operation requires {0}")]
    MissingData(&'static str),
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("root system is not of finite type (more than {bound} almost positive roots)")]
    NotFiniteType { bound: usize },
    #[error("tau orbit exhausted without reaching a negative simple root")]
    OrbitExhausted,
    #[error("not found: {0}")]
    NotFound(String),
    #[error("exchange graph is truncated; operation requires a complete graph")]
    RequiresComplete,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown corpus `{0}`")]
    UnknownCorpus(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
