use thiserror::Error;

/// Errors produced by the entropy-accounting routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The requested Hilbert space exceeds the amplitude budget.
    #[error("capacity exceeded: {requested} amplitudes requested, budget is {limit}")]
    Capacity { requested: usize, limit: usize },

    /// Bad labels, mismatched dimensions, out-of-range parameters.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A matrix that should be a physical state is not one (beyond tolerance).
    #[error("numerical validity: {0}")]
    Numerical(String),

    /// The harmonic chain's dynamical matrix is singular.
    #[error("singular dynamical matrix: self_freq = {self_freq} leaves a zero mode ({detail})")]
    Regulator { self_freq: f64, detail: String },

    /// A reduced Gaussian covariance violates the uncertainty relation.
    #[error("uncertainty violation: symplectic eigenvalue {nu} < 1/2")]
    Uncertainty { nu: f64 },

    /// A fit was asked for with too few usable points.
    #[error("insufficient data: {usable} usable points, need at least {needed}")]
    InsufficientData { usable: usize, needed: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
