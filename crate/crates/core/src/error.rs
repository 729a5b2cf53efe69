use thiserror::Error;

/// Errors raised by constructions and by the core data model.
///
/// Verification findings are never errors; they are reported through
/// [`crate::verify::VerificationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MstsError {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("words are over different alphabets")]
    IncomparableWords,

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("unsupported by general construction: {0}")]
    Unsupported(String),

    #[error("condition (5) fails: {0} is not divisible by 3")]
    NotDivisible(u64),

    #[error("enumeration budget exceeded: {size} words > limit {limit}")]
    TooLarge { size: u64, limit: u64 },

    #[error("input rejected by verification: {0}")]
    Rejected(String),
}

pub type Result<T, E = MstsError> = std::result::Result<T, E>;
