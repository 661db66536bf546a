use thiserror::Error;

use crate::ideal::Ideal;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed ring setup, or operands from different rings.
    #[error("configuration error: {0}")]
    Config(String),

    /// An operation was called outside its domain (colon by zero, level-0 root, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A gamma-sheaf invariant does not hold.
    #[error("validation error: {inclusion} fails, witness generator {witness}")]
    Validation { inclusion: String, witness: String },

    /// Degree, exponent or S-pair limits were exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// An iteration did not stabilize within its budget. `partial` holds the
    /// computed chain for diagnosis.
    #[error("{what} did not stabilize within {limit} steps")]
    Budget {
        what: &'static str,
        limit: usize,
        partial: Vec<Ideal>,
    },

    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A computed certificate contradicts a proven property.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_) | Error::Budget { .. })
    }
}
