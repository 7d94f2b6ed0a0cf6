use alloc::string::String;
use core::fmt;

/// Errors raised by constructors, predicates and the theorem harness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    InvalidParameter(String),
    Unsupported(String),
    RingMismatch,
    NotProper,
    InvalidSubmodule(String),
    NotAHomomorphism(String),
    NotMultiplicationModule,
    NotWeaklyClassicalPrime,
    HypothesisFailed(String),
    /// The structure has more elements than the configured bound allows.
    TooLarge {
        size: usize,
        bound: usize,
    },
    /// The object is the zero ring or the zero module.
    Degenerate,
    NotApplicable(String),
    UnknownTheorem(String),
    UnknownGoal(String),
    ElementNotFound(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(s) => write!(f, "invalid parameter: {s}"),
            Error::Unsupported(s) => write!(f, "unsupported: {s}"),
            Error::RingMismatch => f.write_str("operands live over different rings"),
            Error::NotProper => f.write_str("submodule or ideal is not proper"),
            Error::InvalidSubmodule(s) => write!(f, "invalid submodule: {s}"),
            Error::NotAHomomorphism(s) => write!(f, "not a homomorphism: {s}"),
            Error::NotMultiplicationModule => f.write_str("module is not a multiplication module"),
            Error::NotWeaklyClassicalPrime => f.write_str("submodule is not weakly classical prime"),
            Error::HypothesisFailed(s) => write!(f, "hypothesis failed: {s}"),
            Error::TooLarge { size, bound } => {
                write!(f, "structure of size {size} exceeds bound {bound}")
            }
            Error::Degenerate => f.write_str("degenerate (zero) structure"),
            Error::NotApplicable(s) => write!(f, "not applicable: {s}"),
            Error::UnknownTheorem(s) => write!(f, "unknown theorem id `{s}`"),
            Error::UnknownGoal(s) => write!(f, "unknown search goal `{s}`"),
            Error::ElementNotFound(s) => write!(f, "element {s} is not in the carrier"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
