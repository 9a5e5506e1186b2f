use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("no upper-bound equilibrium: epsilon = {epsilon} is not below max g = {max_g}")]
    NoEquilibrium { epsilon: f64, max_g: f64 },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("requested accuracy {requested:e} not reached (estimate {estimate:e})")]
    AccuracyNotReached { estimate: f64, requested: f64 },

    #[error("no binding: minimal molecular energy {min_energy} is not below the dissociation threshold -1")]
    NoBinding { min_energy: f64, a_at_min: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
