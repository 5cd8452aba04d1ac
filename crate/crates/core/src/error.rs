use thiserror::Error;

/// Failures surfaced by the analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("zero polynomial: {0}")]
    ZeroPolynomial(String),
    #[error("polynomial is not square-free: {0}")]
    NotSquarefree(String),
    #[error("constant polynomial does not define a curve")]
    ConstantPolynomial,
    #[error("system has infinitely many solutions: {0}")]
    CommonComponent(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("numerical certification failed: {0}")]
    CertificationFailed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, CurveError>;
