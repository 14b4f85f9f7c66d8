use thiserror::Error;

/// Errors raised by the combinatorial core.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: out-of-range labels, wrong cardinalities, length mismatches.
    #[error("validation error: {0}")]
    Validation(String),

    /// Structurally valid input outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested size exceeds the configured enumeration bound.
    #[error("resource limit: n = {n} exceeds enumeration bound {bound}")]
    ResourceLimit { n: usize, bound: usize },

    /// An internal identity that must hold unconditionally failed.
    #[error("integrity error: {0}")]
    Integrity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
