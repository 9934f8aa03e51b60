use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeP(u32),
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u32 },
    #[error("modulus must be monic of degree {expected}, got {got} coefficients")]
    DegreeMismatch { expected: u32, got: usize },
    #[error("field of order {0} exceeds the supported limit of {max}", max = crate::gfq::MAX_ORDER)]
    FieldTooLarge(u64),
    #[error("coefficient {coeff} is out of range for characteristic {p}")]
    CoefficientOutOfRange { coeff: i64, p: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero element has no multiplicative order")]
    ZeroElement,
    #[error("invalid quandle parameter: {0}")]
    InvalidQuandle(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("value table has {got} entries, expected {expected}")]
    IncompleteValueTable { expected: usize, got: usize },
    #[error("cochain does not vanish on late-degenerate tuples")]
    NotQuandleCochain,
    #[error("{0} is not divisible by the characteristic")]
    NotDivisibleByP(u64),
    #[error("case II coefficient is singular for this tuple")]
    CaseIICoefficientSingular,
    #[error("hypothesis of {family} does not hold for {params:?}")]
    ConditionViolation { family: String, params: Vec<u32> },
    #[error("unknown proposition or family id '{0}'")]
    UnknownProposition(String),
    #[error("estimated working set of {estimate_bytes} bytes exceeds the ceiling of {ceiling_bytes} bytes")]
    ResourceLimit {
        estimate_bytes: u64,
        ceiling_bytes: u64,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
