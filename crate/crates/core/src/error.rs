//! Error type shared by the whole pipeline.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("adjacency matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph is not regular: vertex 0 has degree {expected}, vertex {vertex} has degree {got}")]
    NotRegular {
        vertex: usize,
        expected: usize,
        got: usize,
    },

    #[error("graph is not connected")]
    NotConnected,

    #[error("vertex index {index} out of range for {len} vertices")]
    VertexOutOfRange { index: usize, len: usize },

    #[error("level index {index} out of range for {len} levels")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("malformed edge list at line {line}: {reason}")]
    MalformedEdgeLine { line: usize, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degenerate levels: |x_{i} - x_{j}| below separation tolerance")]
    DegenerateLevels { i: usize, j: usize },

    #[error("negative discriminant: B = {b:e} < 0, no real critical hopping strength")]
    NegativeDiscriminant { b: f64 },

    #[error("zero denominator: |A + 2*sqrt(B*(x1-x0))| below 1e-12")]
    ZeroDenominator,

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("gap is not strictly positive at s = {s}")]
    NonPositiveGap { s: f64 },

    #[error("norm drift {drift:e} exceeds 1e-4; reduce the integration step")]
    NormDriftExceeded { drift: f64 },

    #[error("graph too large for dense diagonalization: {n} > {max}")]
    TooLarge { n: usize, max: usize },

    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code for reports and CLI diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotSymmetric(..) => "not_symmetric",
            Error::SelfLoop(..) => "self_loop",
            Error::NotRegular { .. } => "not_regular",
            Error::NotConnected => "not_connected",
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::MalformedEdgeLine { .. } => "malformed_edge_line",
            Error::InvalidParameter(..) => "invalid_parameter",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::DegenerateLevels { .. } => "degenerate_levels",
            Error::NegativeDiscriminant { .. } => "negative_discriminant",
            Error::ZeroDenominator => "zero_denominator",
            Error::DomainError(..) => "domain_error",
            Error::NonPositiveGap { .. } => "non_positive_gap",
            Error::NormDriftExceeded { .. } => "norm_drift_exceeded",
            Error::TooLarge { .. } => "too_large",
            Error::Io(..) => "io_error",
        }
    }
}
