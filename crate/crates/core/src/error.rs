use thiserror::Error;

/// Errors raised by the library. Diagnostics that are not failures (poset
/// validation, Eulerian witnesses) are returned as values instead.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid poset: {}", .0.join("; "))]
    InvalidPoset(Vec<String>),
    #[error("rank overflow: n = {0} exceeds the supported maximum of {max}", max = crate::subset::MAX_N)]
    RankOverflow(usize),
    #[error("chain count overflow")]
    CountOverflow,
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(usize, usize),
    #[error("degenerate interval at element {0}")]
    Degenerate(usize),
    #[error("unknown element id {0}")]
    UnknownElement(usize),
    #[error("wrong basis: expected {expected}, found {found}")]
    WrongBasis { expected: String, found: String },
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not cd-expressible: ce-word {0} has a non-even e-set")]
    NotCdExpressible(String),
    #[error("invalid word {word:?}: {reason}")]
    InvalidWord { word: String, reason: String },
    #[error("interval [{0},{1}] out of range for n = {2}")]
    IntervalOutOfRange(usize, usize, usize),
    #[error("interval system is not an antichain: [{0},{1}] and [{2},{3}]")]
    NotAntichain(usize, usize, usize, usize),
    #[error("interval system is not even")]
    NotEven,
    #[error("invalid lambda sequence: {0}")]
    InvalidLambda(String),
    #[error("rank cardinality mismatch at rank {rank}: {left} vs {right}")]
    RankCardinalityMismatch { rank: usize, left: usize, right: usize },
    #[error("inequality hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("vector lies outside the even-set subspace (nonzero coordinate {0})")]
    OutsideSubspace(String),
    #[error("empty input")]
    EmptyInput,
    #[error("cone is not pointed or not full-dimensional (rank {rank} < dim {dim})")]
    DegenerateCone { rank: usize, dim: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidPoset(_) => "invalid_poset",
            Error::RankOverflow(_) => "rank_overflow",
            Error::CountOverflow => "count_overflow",
            Error::NotComparable(..) => "not_comparable",
            Error::Degenerate(_) => "degenerate",
            Error::UnknownElement(_) => "unknown_element",
            Error::WrongBasis { .. } => "wrong_basis",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotCdExpressible(_) => "not_cd_expressible",
            Error::InvalidWord { .. } => "invalid_word",
            Error::IntervalOutOfRange(..) => "interval_out_of_range",
            Error::NotAntichain(..) => "not_antichain",
            Error::NotEven => "not_even",
            Error::InvalidLambda(_) => "invalid_lambda",
            Error::RankCardinalityMismatch { .. } => "rank_cardinality_mismatch",
            Error::Hypothesis(_) => "hypothesis",
            Error::OutsideSubspace(_) => "outside_subspace",
            Error::EmptyInput => "empty_input",
            Error::DegenerateCone { .. } => "degenerate_cone",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
