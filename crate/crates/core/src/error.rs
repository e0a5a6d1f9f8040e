use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A problem parameter violates its admissible range.
    #[error("{0}")]
    InvalidParams(String),

    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),

    /// A shape cannot be realised for the given parameters.
    #[error("infeasible shape: {0}")]
    InfeasibleShape(String),

    #[error("interval [{t1}, {t2}] lies outside the domain [{lo}, {hi}]")]
    OutsideDomain { t1: f64, t2: f64, lo: f64, hi: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
