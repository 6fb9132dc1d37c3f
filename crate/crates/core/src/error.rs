use thiserror::Error;

use crate::groundset::Subset;

/// Input and precondition errors. Failed verifications are reported
/// separately as [`crate::Violation`]s.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("cannot parse tract element {0:?}")]
    ParseElem(String),
    #[error("unknown tract {0:?} (expected Q, Fp:<prime>, Krasner, Sign or Tropical)")]
    UnknownTract(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse ground-set element {0:?}")]
    ParseElement(String),
    #[error("element index {index} outside 1..={n}")]
    ElementOutOfRange { index: usize, n: usize },
    #[error("ground-set size {0} unsupported (1..=16)")]
    BadGroundSize(usize),
    #[error("ground set too large for exhaustive enumeration: n = {0} > 4")]
    GroundSetTooLarge(usize),
    #[error("empty basis family")]
    EmptyFamily,
    #[error("{subset} is not a {expected}")]
    WrongShape {
        subset: Subset,
        expected: &'static str,
    },
    #[error("{0} is not a basis")]
    NotABasis(Subset),
    #[error("element {element} already lies in basis {basis}")]
    ElementInBasis { basis: Subset, element: String },
    #[error("not a circuit: {0}")]
    NotACircuit(Subset),
    #[error("input family is not a matroid basis family")]
    NotAMatroid,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid Wick function: {0}")]
    InvalidWick(String),
    #[error("invalid restricted GP function: {0}")]
    InvalidRgp(String),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("inconsistent ratios while reconstructing a Wick function: {0}")]
    InconsistentRatios(String),
    #[error("signature supports are not the circuits of the matroid")]
    SupportMismatch,
    #[error("functions have incompatible domains")]
    IncompatibleDomains,
    #[error("row space is not isotropic")]
    NotIsotropic,
    #[error("tract condition failed: {0}")]
    TractConditionFailed(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
