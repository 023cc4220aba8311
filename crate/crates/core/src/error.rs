use thiserror::Error;

/// Errors produced by graph ingestion, matrix construction and bound evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid graph: {0}")]
    Validation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("graph is disconnected: no path between vertices {0} and {1}")]
    Disconnected(usize, usize),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal mass {off_norm:e})")]
    Convergence { sweeps: usize, off_norm: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
