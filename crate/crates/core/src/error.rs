use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeoError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular matrix")]
    Singular,
    #[error("degenerate plane: |A^B|^2 = 0 (curvature numerator {numerator})")]
    DegeneratePlane { numerator: String },
    #[error("bracket not closed in span: {0}")]
    NotClosed(String),
    #[error("numeric domain error: {0}")]
    NumericDomain(String),
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degenerate surface metric at base point")]
    DegenerateSurface,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GeoError>;
