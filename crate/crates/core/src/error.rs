use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature did not converge after {levels} levels (estimate {estimate:e}, error {error:e})")]
    QuadratureNotConverged { levels: usize, estimate: f64, error: f64 },

    #[error("radial eigenvalue did not converge: {0}")]
    RadialNotConverged(String),

    #[error("no bound state at the requested parameters")]
    NoBoundState,

    #[error("bracket search failed: {0}")]
    BracketFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
