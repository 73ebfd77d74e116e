//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by fraction evaluation and certification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A continued fraction element was zero.
    #[error("continued fraction elements must be nonzero")]
    InvalidElement,

    /// A requested index exceeds the materialized sequence length.
    #[error("index {requested} out of range for a sequence of length {len}")]
    OutOfRange { requested: usize, len: usize },

    /// Origin-centered disks require a sector half-angle strictly below pi/4.
    /// On the pi/4 boundary ray the bound provably fails (see the
    /// counterexample evaluator), so no epsilon grace is given.
    #[error(
        "sector half-angle {half_angle} is too wide for origin-centered disks: \
             the pi/4 ray admits points escaping every such disk, so the half-angle \
             must be strictly below pi/4"
    )]
    SectorTooWide { half_angle: f64 },

    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A certificate was requested with preconditions that do not hold
    /// (undersized radius, inadmissible seed). Distinct from a failed
    /// certificate: only a value escaping the disk counts as a failure.
    #[error("invalid certificate request: {0}")]
    InvalidCertificateRequest(String),
}

pub type Result<T> = std::result::Result<T, Error>;
