use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix shape {rows}x{cols} does not match basis dimension {dim}")]
    ShapeMismatch { rows: usize, cols: usize, dim: usize },

    #[error("vector length {got} does not match basis dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("cutoff {cutoff} cannot represent {what}")]
    CutoffTooSmall { cutoff: usize, what: &'static str },

    #[error("margin {margin} must satisfy 1 <= margin < cutoff {cutoff}")]
    InvalidMargin { margin: usize, cutoff: usize },

    #[error("probe cut {probe_cut} exceeds cutoff {cutoff} - 2")]
    ProbeTooLarge { probe_cut: usize, cutoff: usize },

    #[error("invalid quadrature order: {0}")]
    InvalidOrder(String),

    #[error("grid too coarse for cutoff {cutoff}: {reason}")]
    GridTooCoarse { cutoff: usize, reason: String },

    #[error("parameter out of supported range: {0}")]
    OutOfRange(String),

    #[error("state is not unit-normalized (norm^2 = {norm_sqr})")]
    Unnormalized { norm_sqr: f64 },

    #[error("state has weight on edge-contaminated index (m={m}, n={n})")]
    SupportViolation { m: usize, n: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
