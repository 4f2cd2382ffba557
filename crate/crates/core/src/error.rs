use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} exponents, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operands belong to different rings")]
    IncompatibleRing,

    #[error("leading term of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("Groebner basis computation exceeded the step limit of {limit} S-pair reductions")]
    StepLimitExceeded { limit: u64 },

    #[error("improper ideal: the ideal is the whole ring")]
    ImproperIdeal,

    #[error("IM = M: the module is annihilated modulo I (1 lies in I + J), grade is infinite")]
    IdealEqualsModule,

    #[error(
        "no regular element found after {budget} trials although one exists; \
         raise the search budget or use characteristic 0 / a larger prime"
    )]
    SearchExhausted { budget: u32 },

    #[error("expected a monomial ideal, found non-monomial generator {0}")]
    NotMonomial(String),

    #[error("expected a homogeneous ideal, found inhomogeneous generator {0}")]
    NotHomogeneous(String),

    #[error("prime {0} is not in the support of the module")]
    EmptySupport(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("instance guardrail violated: {0}")]
    Guardrail(String),

    #[error("unknown suite id `{0}`")]
    UnknownSuite(String),
}
