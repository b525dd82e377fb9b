use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("monomials belong to different rings")]
    RingMismatch,
    #[error("exponent arithmetic overflowed")]
    Overflow,
    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { divisor: String, dividend: String },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("exponent vector has length {got}, ring has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("binomial has identical sides")]
    ZeroBinomial,
    #[error("normal form exceeded {0} rewrite steps; marking is probably incoherent")]
    ReductionBound(u64),
    #[error("marking is not coherent: no strictly separating nonnegative weight exists")]
    IncoherentMarking,
    #[error("configuration is empty")]
    EmptyConfiguration,
    #[error("duplicate configuration member {0}")]
    DuplicateMember(String),
    #[error("not a configuration: no nonnegative weight w with w.a = 1 for every member")]
    NotAConfiguration,
    #[error("weight vector does not certify the configuration: {0}")]
    BadWeight(String),
    #[error("inner rings share variable `{0}`")]
    SharedVariables(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("constraints admit no monomial")]
    EmptySegreVeronese,
    #[error("sorted rewrite {0} is not a member of the configuration")]
    SortClosure(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("membership routes disagree on {0}")]
    LemmaDisagreement(String),
    #[error("{0} admits no factorization of a type in the base configuration")]
    NoFactorization(String),
    #[error("claimed property failed: {0}")]
    ClaimFailed(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
