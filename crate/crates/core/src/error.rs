use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The closed-form count of the requested family is larger than the cap.
    #[error("enumeration would produce {predicted} structures, cap is {cap}")]
    CapExceeded { predicted: BigInt, cap: u64 },

    /// An exact division that must produce an integer did not.
    #[error("inexact division in {0}")]
    InexactDivision(&'static str),

    #[error("polynomial of degree {degree} exceeds reversal window {window}")]
    DegreeExceedsWindow { degree: usize, window: usize },

    #[error("tree is not a complete {0}-ary tree")]
    NotComplete(u32),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("series has zero constant term and cannot be inverted")]
    ReciprocalOfNonUnit,

    #[error("series has nonzero constant term and cannot be divided by z")]
    ShiftDownOfUnit,

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("parse error: {0}")]
    Parse(String),
}
