use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not invertible (rank {rank} < {size})")]
    Singular { rank: usize, size: usize },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("value out of domain: {0}")]
    Domain(String),

    /// The wiretap channel is not a degraded version of the main channel.
    #[error("wiretap channel is not degraded: p = {p} > p_w = {p_w}")]
    NotDegraded { p: f64, p_w: f64 },

    #[error("main and wiretap crossover coincide (p = p_w = {0}); there is no secrecy to measure")]
    NoSecrecy(f64),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Enumeration would exceed the fixed work budget.
    #[error("request exceeds enumeration budget: {what} (limit {limit})")]
    Capability { what: String, limit: String },

    /// Adaptive quadrature did not reach its tolerance; the best estimate is attached.
    #[error("quadrature did not converge: estimate {estimate}, error bound {error_bound}")]
    Numerical { estimate: f64, error_bound: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}
