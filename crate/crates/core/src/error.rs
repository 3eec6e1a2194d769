use thiserror::Error;

/// Every failure the library can report. The variant name doubles as the
/// machine-readable error tag emitted by the CLI and the C ABI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{p} is not a prime (or exceeds the supported modulus range)")]
    NotPrime { p: u64 },
    #[error("no primitive {r}-th root of unity in F_{p}: {r} does not divide {p}-1")]
    NoSuchRoot { p: u64, r: u64 },
    #[error("wild action: characteristic {p} divides the group order {r}")]
    TameViolation { p: u64, r: u64 },
    #[error("ring mismatch between operands")]
    DomainMismatch,
    #[error("invalid endomorphism: {0}")]
    InvalidEndomorphism(String),
    #[error("endomorphism does not have order dividing {r} modulo the truncation")]
    NotFiniteOrder { r: u64 },
    #[error("eigenspaces span dimension {found}, expected {expected}")]
    NotDiagonalizable { found: usize, expected: usize },
    #[error("pinned parameter rejected: {0}")]
    PinnedInconsistent(String),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("weight {ell0} on the uniformizer is not a unit modulo {r}")]
    NotGaloisWeights { r: u64, ell0: u64 },
    #[error("invalid weight system: {0}")]
    InvalidWeights(String),
    #[error("component does not belong to the fixed locus of this model")]
    ComponentMismatch,
    #[error("arity mismatch: expected {expected} values, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("section is not a ring map: {0}")]
    NotARingMap(String),
    #[error("group order {r} is not a power of {q}")]
    NotQGroup { r: u64, q: u64 },
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable tag used in JSON output and by foreign callers.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotPrime { .. } => "NotPrime",
            Error::NoSuchRoot { .. } => "NoSuchRoot",
            Error::TameViolation { .. } => "TameViolation",
            Error::DomainMismatch => "DomainMismatch",
            Error::InvalidEndomorphism(_) => "InvalidEndomorphism",
            Error::NotFiniteOrder { .. } => "NotFiniteOrder",
            Error::NotDiagonalizable { .. } => "NotDiagonalizable",
            Error::PinnedInconsistent(_) => "PinnedInconsistent",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NotGaloisWeights { .. } => "NotGaloisWeights",
            Error::InvalidWeights(_) => "InvalidWeights",
            Error::ComponentMismatch => "ComponentMismatch",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::NotARingMap(_) => "NotARingMap",
            Error::NotQGroup { .. } => "NotQGroup",
            Error::TooLarge(_) => "TooLarge",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// Internal failures signal a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::NotARingMap(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
