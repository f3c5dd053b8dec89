//! Error taxonomy shared across the engine.

use crate::complexes::Slot;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// `quotient_dim` was handed maps that do not compose to zero.
    #[error("composition is nonzero at ({row}, {col}): upstream sign or construction bug")]
    CompositionNonzero { row: usize, col: usize },

    /// A differential failed `d^2 = 0` on the named slot.
    #[error("differential does not square to zero at slot (weight {}, degree {})", slot.weight, slot.degree)]
    DifferentialSquareNonzero { slot: Slot },

    /// Generator weights must be strictly positive or strictly negative.
    #[error("generator weights must all be strictly positive or all strictly negative: {detail}")]
    MixedWeightSigns { detail: String },

    /// PBW straightening left the weight window; cannot happen for a
    /// weight-preserving bracket, so this signals an internal bug.
    #[error("PBW straightening left the weight window at weight {weight}")]
    StraighteningOverflow { weight: i64 },

    /// A bar-type construction needs the augmentation ideal in strictly
    /// signed weights to truncate.
    #[error("bar construction over an algebra with unbounded weight content: {detail}")]
    UnboundedWeight { detail: String },

    /// Unknown built-in simplicial model or preset.
    #[error("unknown model {name:?}")]
    UnknownModel { name: String },

    /// The simplicial level cap was too small for the requested weight window.
    #[error("level cap {cap} too small: level {cap_plus_one} still contributes in the weight window")]
    LevelCapTooSmall { cap: usize, cap_plus_one: usize },

    /// Gluing-expression parse error; `offset` is 1-based.
    #[error("syntax error at offset {offset}: {message}")]
    SyntaxError { offset: usize, message: String },

    /// A gluing expression bound a piece to a value of the wrong role.
    #[error("role mismatch: {detail}")]
    RoleMismatch { detail: String },

    /// `check_splits` requires codimension `m` strictly less than `n`.
    #[error("invalid codimension: m = {m} must be strictly less than n = {n}")]
    InvalidCodim { m: u32, n: u32 },

    /// A structural invariant (associativity, Leibniz, Jacobi, unit,
    /// commutativity, simplicial identity, module axiom) failed.
    #[error("validation failed: {detail}")]
    Validation { detail: String },

    /// Malformed presentation or model input.
    #[error("invalid input: {detail}")]
    Input { detail: String },
}

impl Error {
    pub fn validation(detail: impl Into<String>) -> Self {
        Error::Validation {
            detail: detail.into(),
        }
    }

    pub fn input(detail: impl Into<String>) -> Self {
        Error::Input {
            detail: detail.into(),
        }
    }
}
