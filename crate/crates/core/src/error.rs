use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero polynomial where a non-zero one is required")]
    ZeroPolynomial,
    #[error("polynomial vanishes identically modulo {0}")]
    VanishesModP(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("denominator divisible by {0}")]
    DenominatorDivisible(u64),
    #[error("shift {shift} is not a root of the defining polynomial modulo {p}")]
    ShiftNotRoot { p: u64, shift: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("ambiguous root selection: {0}")]
    AmbiguousRoot(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported group order {0}")]
    UnsupportedOrder(usize),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("relation violated: {0}")]
    RelationViolated(String),
    #[error("submodule not stable: generator {generator} maps {vector:?} outside the span")]
    NotStable { generator: String, vector: Vec<u32> },
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error("unknown check target '{target}'; available: {available}")]
    UnknownTarget { target: String, available: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
