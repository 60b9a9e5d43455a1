use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// All input points coincide, so the hull is a single point.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("three-dimensional polytope has no facet description (hrep)")]
    MissingHRep,

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("body is not normalized (circumball is not the unit ball)")]
    NotNormalized,

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("parse error: {0}")]
    Parse(String),
}
