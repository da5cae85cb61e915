use num_bigint::BigUint;
use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument outside the operation's domain (zero input, composite
    /// "prime", degenerate parameter, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An enumeration or factoring budget ran out before an answer was found.
    #[error("resource exhausted: {0}")]
    Resource(String),

    /// The answer depends on the full factorization of this cofactor, which
    /// the factoring budget could not split.
    #[error("factorization incomplete: unfactored cofactor {0}")]
    Incomplete(BigUint),

    /// A theorem-backed formula was asked for outside its hypothesis.
    #[error("outside theorem hypothesis: {0}")]
    OutsideHypothesis(String),

    /// A block certificate failed re-verification.
    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
