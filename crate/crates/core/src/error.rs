use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("path reduction did not terminate by length {0}")]
    NotFiniteDimensional(usize),
    #[error("relation involves a path of length < 2: {0}")]
    NotAdmissible(String),
    #[error("claimed inclusion is not injective")]
    NotInjective,
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("approximation diverged after {steps} steps (dimension {dim})")]
    Diverged { steps: usize, dim: usize, trace: Vec<usize> },
    #[error("object is not in BL (both ends must be projective)")]
    NotInBL,
    #[error("cokernel of the presentation is not isomorphic to the module")]
    PresentationMismatch,
    #[error("independent computations disagree: {0}")]
    OracleDisagreement(String),
    #[error("a complete list of indecomposables is required")]
    MissingIndecomposableList,
    #[error("reflection did not stabilise within caps ({steps} steps, dimension {dim})")]
    Divergent { steps: usize, dim: usize, trace: Vec<usize> },
    #[error("ideal generated by the idempotent is not idempotent")]
    NotIdempotentIdeal,
    #[error("torsion part of the regular module is not a two-sided ideal")]
    NotTwoSidedIdeal,
    #[error("projective dimension exceeds one")]
    PdTooLarge,
    #[error("rewriting system did not stabilise")]
    NotStabilised,
    #[error("completion needs overlaps beyond degree bound {bound}")]
    BoundExceeded { bound: usize },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}
