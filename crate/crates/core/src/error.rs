use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("field of order {p}^{degree} does not fit in 63 bits")]
    FieldTooLarge { p: u64, degree: u32 },
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeOverflow { degree: u128, cap: usize },
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("polynomial is divisible by x")]
    DivisibleByX,
    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: u64, b: u64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("the characteristic {p} divides the exponent {d}")]
    PDividesD { p: u64, d: u64 },
    #[error("f is a monomial")]
    MonomialF,
    #[error("polynomial is not q-linearized")]
    NotLinearized,
    #[error("g has no usable special form: {0}")]
    NotSpecialForm(String),
    #[error("the construction needs a factor whose constant term avoids 0 and 1")]
    BadConstantTerm,
    #[error("the construction needs q > 2")]
    QTooSmall,
    #[error("pair is {0}, not generic")]
    NotGeneric(String),
    #[error("witness search exhausted: {0}")]
    WitnessSearchExhausted(String),
    #[error("extension of absolute degree {needed} exceeds the cap {cap}")]
    FieldCapExceeded { needed: u64, cap: u32 },
    #[error("no parts to combine")]
    EmptyParts,
    #[error("degree too small: {0}")]
    DegreeTooSmall(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
