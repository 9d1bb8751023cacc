use thiserror::Error;

/// Errors reported by the framelet library.
#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("mask symbol value at 0 is {value}, expected 1 within {tol}")]
    NotARefinementMask { value: f64, tol: f64 },

    #[error("highpass/dual mask lists have mismatched lengths: {primal} vs {dual}")]
    MaskListMismatch { primal: usize, dual: usize },

    #[error("ratio |f(ξ)|/‖ξ‖^{order} grows as ξ → 0; declared zero order too high")]
    MomentOrderTooHigh { order: u32 },

    #[error("perturbation entry missing for lattice index {index:?}")]
    MissingPerturbation { index: [i64; 2] },

    #[error("relative error undefined: reference values are all zero on the grid")]
    ZeroReference,

    #[error("decay fit needs at least 3 positive error values")]
    InsufficientDecayData,

    #[error("parse error in {file} line {line}: {reason}")]
    Parse {
        file: String,
        line: usize,
        reason: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
