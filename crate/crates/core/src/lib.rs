//! Symbolic motivic iterated integrals attached to labeled posets.
//!
//! The library models Yamamoto-style integrals on finite labeled posets
//! and the Goncharov coproduct machinery acting on them: expansion into
//! iterated-integral words over linear extensions, full coproducts,
//! infinitesimal coactions D_r and their poset-level closed forms, a
//! shuffle-regularization pass, an exact relation-span certificate
//! engine over the rationals, Schur multiple zeta values on skew
//! tableaux, and independent floating-point series oracles.
//!
//! Everything symbolic is exact: coefficients are arbitrary-precision
//! rationals and identities are checked by cancellation, never by
//! floating-point comparison. Floats appear only in the deliberately
//! independent numeric module.

pub mod coaction;
pub mod dsl;
pub mod formal;
pub mod json;
pub mod latex;
pub mod numeric;
pub mod poset;
pub mod rat;
pub mod relations;
pub mod schur;
pub mod verify;
pub mod words;
pub mod yamamoto;

pub use formal::FormalSum;
pub use poset::{ArrowElem, LabeledPoset, PathSpec, TotalOrder};
pub use rat::Q;

/// Unified error type for the whole crate.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum Error {
    #[error("order relations contain a directed cycle")]
    CycleDetected,
    #[error("unknown element: {0}")]
    UnknownElement(String),
    #[error("missing or mismatched label: {0}")]
    MissingLabel(String),
    #[error("duplicate element name: {0}")]
    DuplicateElement(String),
    #[error("elements {0} and {1} are already comparable")]
    Comparable(String, String),
    #[error("subset is not a window")]
    NotWindow,
    #[error("endpoint is not in the arrow set")]
    NotArrow,
    #[error("carrier sets do not match")]
    CarrierMismatch,
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("word is not over the labels {{0, 1}}")]
    NotBinaryWord,
    #[error("index is not admissible")]
    NotAdmissibleIndex,
    #[error("r must be at least 1")]
    BadR,
    #[error("bound too large: {0}")]
    BoundTooLarge(String),
    #[error("target lies outside the configured universe: {0}")]
    UniverseMismatch(String),
    #[error("unknown relation kind: {0}")]
    UnknownRelation(String),
    #[error("unsupported tableau shape: {0}")]
    UnsupportedShape(String),
    #[error("tableau entries are not constant along diagonals")]
    NotDiagonalConstant,
    #[error("numeric evaluation requires the standard path 0 → 1")]
    NonStdPath,
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("JSON error: {0}")]
    Json(String),
}
