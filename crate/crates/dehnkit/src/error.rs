use dehnkit_core::cayley::BallError;
use dehnkit_core::combing::CombingError;
use dehnkit_core::complex::ComplexError;
use dehnkit_core::coned::ConedError;
use dehnkit_core::filling::{DehnError, FillingError, FitError};

/// Failure of a subcommand, mapped onto a process exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("infeasible instance: {0}")]
    Infeasible(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Infeasible(_) => 4,
            CliError::Io(_) | CliError::Other(_) => 1,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<BallError> for CliError {
    fn from(e: BallError) -> Self {
        match e {
            BallError::VertexCap { .. } => CliError::Cap(e.to_string()),
            BallError::Disconnected(..) => CliError::Other(e.to_string()),
        }
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::CellCap { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Other(e.to_string()),
        }
    }
}

impl From<FillingError> for CliError {
    fn from(e: FillingError) -> Self {
        match e {
            FillingError::BudgetExhausted { .. } => CliError::Cap(e.to_string()),
            FillingError::DimensionMismatch => CliError::Other(e.to_string()),
            _ => CliError::Infeasible(e.to_string()),
        }
    }
}

impl From<DehnError> for CliError {
    fn from(e: DehnError) -> Self {
        match e {
            DehnError::EnumerationCap { .. } => CliError::Cap(e.to_string()),
            DehnError::Unsupported(_) => CliError::Other(e.to_string()),
            DehnError::Filling(f) => f.into(),
        }
    }
}

impl From<ConedError> for CliError {
    fn from(e: ConedError) -> Self {
        match e {
            ConedError::TooLarge { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Other(e.to_string()),
        }
    }
}

impl From<CombingError> for CliError {
    fn from(e: CombingError) -> Self {
        match e {
            CombingError::Polynomial(_) => CliError::Parse(e.to_string()),
            _ => CliError::Other(e.to_string()),
        }
    }
}

impl From<FitError> for CliError {
    fn from(e: FitError) -> Self {
        CliError::Other(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}
