use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the engine. Each variant has a stable machine code, see [`Error::code`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a prime")]
    InvalidField(u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("generator {0} is not invertible")]
    NonInvertibleGenerator(usize),
    #[error("group order exceeds the cap of {0} elements")]
    OrderCapExceeded(usize),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("matrix is not an element of the group: {0}")]
    NotASubgroupElement(String),
    #[error("inconsistent module: {0}")]
    InconsistentModule(String),
    #[error("zero polynomial has no linear multiplicity")]
    ZeroPolynomial,
    #[error("covariant is not invariant under the subgroup")]
    NotSubgroupInvariant,
    #[error("covariants belong to modules of different dimensions")]
    MixedModules,
    #[error("expected {expected} covariants, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("no free basis of the point stabilizer covariants found up to degree {0}")]
    CapExceeded(usize),
    #[error("Molien series needs characteristic 0 (got characteristic {0})")]
    ModularNotSupported(u32),
    #[error("operation needs a prime field")]
    NotPrimeField,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("rational function has a pole where a regular value was expected: {0}")]
    Pole(String),
    #[error("internal consistency check failed: {0}")]
    TheoremViolation(String),
}

impl Error {
    /// Stable short identifier, used by the command-line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidField(_) => "invalid_field",
            Error::Parse(_) => "parse",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::NonInvertibleGenerator(_) => "non_invertible_generator",
            Error::OrderCapExceeded(_) => "order_cap_exceeded",
            Error::Structure(_) => "structure",
            Error::NotASubgroupElement(_) => "not_a_subgroup_element",
            Error::InconsistentModule(_) => "inconsistent_module",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::NotSubgroupInvariant => "not_subgroup_invariant",
            Error::MixedModules => "mixed_modules",
            Error::WrongCount { .. } => "wrong_count",
            Error::CapExceeded(_) => "cap_exceeded",
            Error::ModularNotSupported(_) => "modular_not_supported",
            Error::NotPrimeField => "not_prime_field",
            Error::HypothesisFailed(_) => "hypothesis_failed",
            Error::Pole(_) => "pole",
            Error::TheoremViolation(_) => "theorem_violation",
        }
    }
}
