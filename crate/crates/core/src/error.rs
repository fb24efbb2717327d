//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The zero polynomial has no root count, degree-dependent quantity, etc.
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    /// Parameter vectors must keep at least one nonzero coefficient.
    #[error("parameter vector is zero after trimming trailing zeros")]
    ZeroParamVec,

    /// A precondition on the inputs was violated.
    #[error("{0}")]
    Domain(String),

    /// The iterative root finder did not reach the requested residual.
    #[error("root finding did not converge: worst residual {worst_residual:e} after {iterations} iterations")]
    RootFinding { worst_residual: f64, iterations: u32 },

    /// Adaptive quadrature could not meet the requested accuracy.
    #[error("quadrature did not converge: achieved error estimate {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },

    /// No embedded fixture with that id.
    #[error("unknown sequence fixture id `{0}`")]
    UnknownFixture(String),

    /// Network fetch failed (and no cache entry could be served).
    #[error("network fetch failed for {id}: {reason}")]
    Network { id: String, reason: String },

    /// Offline mode with no cached copy.
    #[error("cache miss for {0} while offline")]
    OfflineMiss(String),

    /// Malformed input data (b-file text, rational literal, ...).
    #[error("could not parse {what}: {detail}")]
    Parse { what: String, detail: String },

    /// Integer-sequence comparison fed a non-integral rational.
    #[error("expected integral terms for comparison, found {0}")]
    NonIntegral(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
