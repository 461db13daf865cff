use covariant_core::Error;
use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Engine(#[from] Error),
}

impl CliError {
    /// Process exit status; one per error category, `0` is success.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Io(_) => 4,
            CliError::Engine(e) => match e {
                Error::Parse(_) => 2,
                Error::InvalidField(_) | Error::DimensionMismatch(_) => 3,
                Error::NonInvertibleGenerator(_) | Error::NotASubgroupElement(_) => 5,
                Error::InconsistentModule(_)
                | Error::MixedModules
                | Error::WrongCount { .. }
                | Error::NotSubgroupInvariant => 6,
                Error::OrderCapExceeded(_) | Error::CapExceeded(_) => 7,
                Error::ModularNotSupported(_) | Error::NotPrimeField | Error::Pole(_) => 8,
                Error::HypothesisFailed(_) => 9,
                Error::Structure(_) | Error::TheoremViolation(_) => 10,
                Error::ZeroPolynomial => 1,
            },
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Validation(_) => "validation",
            CliError::Io(_) => "io",
            CliError::Engine(e) => e.code(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn categories_have_distinct_codes() {
        let cases = [
            CliError::Parse(String::new()),
            CliError::Validation(String::new()),
            CliError::Io(String::new()),
            Error::NonInvertibleGenerator(0).into(),
            Error::InconsistentModule(String::new()).into(),
            Error::CapExceeded(0).into(),
            Error::NotPrimeField.into(),
            Error::HypothesisFailed(String::new()).into(),
            Error::TheoremViolation(String::new()).into(),
        ];
        let codes: Vec<u8> = cases.iter().map(CliError::exit_code).collect();
        assert_eq!(codes, vec![2, 3, 4, 5, 6, 7, 8, 9, 10]);
    }
}
