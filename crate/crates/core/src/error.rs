use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclic factor must be positive, got {0}")]
    NonPositiveFactor(i64),

    #[error("shape mismatch: expected {expected} coordinates, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("coordinate {value} out of range for factor {modulus}")]
    CoordinateOutOfRange { value: u64, modulus: u64 },

    #[error("{what} has {size} elements, exceeding the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: u64,
        cap: u64,
    },

    #[error("invariant factor {factor} does not divide root-of-unity order {m}")]
    FactorDoesNotDivide { factor: u64, m: u64 },

    #[error("element index {index} out of range for group of order {order}")]
    InvalidIndex { index: u64, order: u64 },

    #[error("element does not belong to this group: {0}")]
    ForeignElement(String),

    #[error("point set is not closed under addition")]
    NotClosed,

    #[error("invalid group spec {spec:?}: {reason}")]
    GroupSpec { spec: String, reason: &'static str },

    #[error("invalid element {text:?}: {reason}")]
    ElementSyntax { text: String, reason: &'static str },

    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: i64 },

    #[error("parity must be 0 or 1, got {0}")]
    InvalidParity(u8),

    #[error("Chern number must be nonnegative, got {0}")]
    NegativeChernNumber(i64),

    #[error("group order overflows 64-bit arithmetic")]
    Overflow,

    #[error("group table violates {0}")]
    AxiomViolation(String),
}
