use std::fmt;

/// Everything that can go wrong in exact arithmetic over the coefficient
/// tower or in the modular-forms layer built on top of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The characteristic must be an odd prime.
    EvenCharacteristic,
    /// The given characteristic is not prime.
    NotPrime(u64),
    /// The field extension modulus is missing, has the wrong degree,
    /// is not monic, or is reducible over F_p.
    BadModulus(String),
    /// Polynomial or fraction division by zero.
    DivisionByZero,
    /// Exact polynomial division requested but a remainder was left.
    InexactDivision,
    /// A monic polynomial was required.
    NotMonic,
    /// The candidate prime factors over F_q.
    Reducible,
    /// The prime (T) itself is excluded; the level is Gamma_0(T).
    PrimeIsT,
    /// A coefficient has negative valuation at the prime, so it has no residue.
    NotPIntegral,
    /// Two operands live over different coefficient rings or field contexts.
    RingMismatch,
    /// Series inversion or division needs a unit constant term.
    NonUnitConstantTerm,
    /// Series division left a remainder below the working precision.
    InexactSeriesDivision,
    /// Series composition needs the inner series to vanish at the origin.
    InnerValuationZero,
    /// The input series is too short for the requested reconstruction.
    PrecisionTooLow { needed: usize, got: usize },
    /// The weight and type are incompatible: k != 2l mod (q-1) or k < 2l.
    TypeMismatch { k: i64, l: i64 },
    /// The series is not the expansion of any form of the requested weight
    /// and type; `exponent` is the first coefficient slot that fails.
    NotModular { exponent: usize },
    /// The requested space of forms is zero-dimensional.
    EmptySpace,
    /// The Carlitz polynomial of 0 is not defined.
    ZeroMultiplier,
    /// Division of isobaric polynomials by zero.
    ZeroDivisor,
    /// Square-freeness of the zero polynomial is not defined.
    ZeroPolynomial,
    /// Malformed wire-format or textual input.
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EvenCharacteristic => write!(f, "characteristic must be odd"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::BadModulus(msg) => write!(f, "bad field modulus: {msg}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::InexactDivision => write!(f, "inexact polynomial division"),
            Error::NotMonic => write!(f, "polynomial must be monic"),
            Error::Reducible => write!(f, "polynomial is reducible"),
            Error::PrimeIsT => write!(f, "the prime T is excluded at level Gamma_0(T)"),
            Error::NotPIntegral => write!(f, "coefficient is not integral at the prime"),
            Error::RingMismatch => write!(f, "operands live over different rings"),
            Error::NonUnitConstantTerm => write!(f, "series constant term is not a unit"),
            Error::InexactSeriesDivision => write!(f, "inexact series division"),
            Error::InnerValuationZero => {
                write!(f, "inner series of a composition must have positive valuation")
            }
            Error::PrecisionTooLow { needed, got } => {
                write!(f, "series precision {got} is below the required {needed}")
            }
            Error::TypeMismatch { k, l } => {
                write!(f, "weight {k} and type {l} are incompatible")
            }
            Error::NotModular { exponent } => {
                write!(f, "series is not modular: unexplained coefficient at u^{exponent}")
            }
            Error::EmptySpace => write!(f, "the space of forms is zero"),
            Error::ZeroMultiplier => write!(f, "Carlitz polynomial of 0 is undefined"),
            Error::ZeroDivisor => write!(f, "division by the zero polynomial"),
            Error::ZeroPolynomial => write!(f, "square-freeness of 0 is undefined"),
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
