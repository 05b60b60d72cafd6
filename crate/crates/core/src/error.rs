use alloc::string::String;
use alloc::vec::Vec;

use crate::Scalar;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported size: {what} = {size} (supported up to {max})")]
    UnsupportedSize {
        what: &'static str,
        size: usize,
        max: usize,
    },

    #[error("unsupported parity: order {0} must be odd")]
    UnsupportedParity(usize),

    #[error("numeric failure: {reason}")]
    NumericFailure {
        reason: String,
        /// Best iterate available when the failure was detected.
        partial: Vec<Scalar>,
    },

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    /// A quantity that has to be real carries an imaginary part above tolerance.
    #[error("structural asymmetry at j = {j}, k = {k}: imaginary residue {residue:e}")]
    StructuralAsymmetry { j: usize, k: usize, residue: f64 },

    #[error("not realizable by this construction: Perron entry {perron} < Φ = {phi}")]
    NotRealizable { perron: f64, phi: f64 },

    #[error("search incomplete: budget of {budget} candidates exhausted without a valid layout")]
    SearchIncomplete { budget: usize },

    #[error("value is not exactly representable: {0}")]
    NotExact(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
