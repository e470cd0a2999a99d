use crate::realnum::Real;

/// Crate-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An input that makes the requested operation meaningless
    /// (division by zero, an oracle evaluator pushed past its cap, ...).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Argument outside the mathematical domain of the function.
    #[error("domain error: {0}")]
    DomainError(String),

    /// The working precision can no longer support the identity or
    /// protocol step being computed (the empirical s0/r0 boundary).
    #[error("precision breakdown: {0}")]
    PrecisionBreakdown(String),

    /// The linear congruence b'k = a' (mod B^L) has no solution.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// Index recovery exhausted every candidate without a verified hit.
    #[error("attack failed: {detail}")]
    AttackFailed {
        detail: String,
        /// Smallest residual seen across all rejected candidates.
        best_residual: Option<Real>,
    },

    /// A recorded protocol transcript is missing messages.
    #[error("incomplete transcript: {0}")]
    IncompleteTranscript(String),

    /// Malformed text input (key files, ciphertext files, scenario files,
    /// real-number strings).
    #[error("parse error: {0}")]
    Parse(String),

    /// Files or values whose base/digits headers disagree.
    #[error("precision mismatch: {0}")]
    PrecisionMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
