//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong outside of a verifier verdict.
///
/// Verifiers report failing configurations through [`crate::verify::Verdict`]
/// witnesses; `Error` is reserved for malformed inputs, violated
/// preconditions, and tripped bound guards.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("truncation is undefined in dimension {dim}")]
    TruncationUndefined { dim: usize },

    #[error("the comparability relation needs dimension >= 2, got {dim}")]
    ComparisonDimension { dim: usize },

    #[error("points {i} and {j} coincide")]
    DuplicatePoint { i: usize, j: usize },

    #[error("identical points have no comparability distance")]
    IdenticalPoints,

    #[error("empty configuration")]
    EmptyConfiguration,

    #[error("{what} out of range: {value} not in [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: u64,
        min: u64,
        max: u64,
    },

    #[error("candidate grid too large: {candidates} candidates exceed the cap of {cap}")]
    GridCapExceeded { candidates: u128, cap: u64 },

    #[error("cannot parse scalar literal '{text}'")]
    ScalarParse { text: String },

    #[error("expected metric {expected}, got {found}")]
    MetricMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("configuration violates the required predicate: {details}")]
    PreconditionFailed { details: String },

    /// Three pairwise-comparable points were found where the odd-distance
    /// structure forbids them. This falsifies the certified bound and thus
    /// signals a broken precondition or an implementation bug.
    #[error("pairwise comparable triple ({a}, {b}, {c}) found where chains of length 3 are impossible")]
    ChainTooLong { a: usize, b: usize, c: usize },

    #[error("bound guard tripped: {details}")]
    GuardTripped { details: String },

    #[error("covering budget exhausted; first uncovered grid point: {point}")]
    CoverageBudget { point: String },

    #[error("certificate rejected: {details}")]
    CertificateInvalid { details: String },
}

pub type Result<T> = std::result::Result<T, Error>;
