use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid deformation parameter: {0}")]
    InvalidDeformation(String),

    #[error("degenerate generalized bracket: q^alpha equals q^beta (alpha = {alpha}, beta = {beta})")]
    DegenerateBracket { alpha: String, beta: String },

    #[error("operator mismatch: {0}")]
    Mismatch(String),

    #[error("operator is not diagonal (largest off-diagonal magnitude {0:e})")]
    NotDiagonal(f64),

    #[error("interior window ({low}, {high}) exhausts a factor of dimension {dim}")]
    WindowExhausted { low: usize, high: usize, dim: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("wrong oscillator kind: expected {expected}, found {found}")]
    KindMismatch { expected: String, found: String },

    #[error("no admissible solution: {0}")]
    NoSolution(String),
}
