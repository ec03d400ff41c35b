use thiserror::Error;

/// Errors raised by the algebraic kernel (polynomials, forms, ideals).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("expected {expected} images or coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("form degree {degree} exceeds ambient dimension {nvars}")]
    FormDegree { degree: usize, nvars: usize },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
