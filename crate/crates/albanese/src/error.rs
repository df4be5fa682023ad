use thiserror::Error;

/// Single error type for the whole crate.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("valuation of the zero function is undefined")]
    UndefinedValuation,

    #[error("insufficient precision: need coefficients through exponent {needed}, have {available}")]
    InsufficientPrecision { needed: i64, available: i64 },

    #[error("non-split input: {0}")]
    NonSplit(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("unknown component `{0}`")]
    UnknownComponent(String),

    #[error("branch {0} appears more than once")]
    DuplicatedBranch(String),

    #[error("conductor condition fails at `{point}`: {detail}")]
    ConductorFails { point: String, detail: String },

    #[error("truncation {truncation} too small, need at least {needed}")]
    TruncationTooSmall { truncation: i64, needed: i64 },

    #[error("invalid singular point `{point}`: {detail}")]
    InvalidSingularPoint { point: String, detail: String },

    #[error("modulus has empty support")]
    EmptyModulus,

    #[error("duplicate place {0}")]
    DuplicatePlace(String),

    #[error("not a Cartier unit: {0}")]
    NotCartierUnit(String),

    #[error("cycle has nonzero degree {degree} on component `{component}`")]
    NonzeroDegree { component: String, degree: i64 },

    #[error("cycle support meets branch place {0}")]
    SupportMeetsBranch(String),

    #[error("duality with a nontrivial abelian part is not supported")]
    UnsupportedAbelianPart,

    #[error("map has a pole or zero at {0} outside the modulus support")]
    NotRegularOutsideModulus(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
