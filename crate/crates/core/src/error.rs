use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GlError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} out of range 0..={max}")]
    Index { index: usize, max: usize },

    #[error("Newton iteration for the roots of P_{degree} did not converge")]
    NoConvergence { degree: usize },

    #[error("invalid curve: {0}")]
    InvalidCurve(String),
}

pub type Result<T> = std::result::Result<T, GlError>;

pub(crate) fn check_param(t: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(GlError::Domain(format!(
            "parameter t = {t} outside [-1, 1]"
        )))
    }
}
