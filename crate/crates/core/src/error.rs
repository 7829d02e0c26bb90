use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    /// A documented precondition of the called operation does not hold.
    #[error("{0}")]
    Domain(String),

    #[error("u = {0} is a pole of the generator")]
    GeneratorPole(Complex64),

    #[error("u = {0} lies on the branch cut of the generator")]
    BranchCut(Complex64),

    #[error("s = {s} lies on the branch slit [{lo}, {hi}]")]
    OnSlit { s: Complex64, lo: f64, hi: f64 },

    #[error("infeasible conversion: {0}")]
    Infeasible(String),

    #[error("horizon mismatch: {0} vs {1}")]
    HorizonMismatch(f64, f64),

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
