use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::groups::Matrix2;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Bad parameters or mismatched operands.
    Usage(String),
    /// Field arithmetic that has no result, e.g. inverting zero.
    Arithmetic(&'static str),
    /// The requested modulus factors over GF(2).
    Reducible { modulus: u32, factor: u32 },
    /// An operation was handed an input outside its domain.
    Precondition(String),
    /// A constructed group disagrees with the brute-force enumeration.
    GroupMismatch {
        enumerated: Vec<Matrix2>,
        brute_force: Vec<Matrix2>,
    },
    /// Malformed polynomial text.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::Arithmetic(msg) => write!(f, "arithmetic error: {msg}"),
            Error::Reducible { modulus, factor } => write!(
                f,
                "modulus {} is reducible: divisible by {}",
                crate::field::format_bit_poly(*modulus),
                crate::field::format_bit_poly(*factor)
            ),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::GroupMismatch {
                enumerated,
                brute_force,
            } => write!(
                f,
                "group enumeration has {} elements but brute force finds {}",
                enumerated.len(),
                brute_force.len()
            ),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
