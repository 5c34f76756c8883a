use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("tower mismatch: `{0}` vs `{1}`")]
    TowerMismatch(String, String),
    #[error("minimal polynomial for `{0}` is not irreducible over the base field")]
    Reducible(String),
    #[error("minimal polynomial for `{0}` must be monic of degree at least 1")]
    BadMinpoly(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resultant of a zero polynomial")]
    ZeroPolynomial,
}
