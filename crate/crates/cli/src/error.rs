use thiserror::Error;

/// Harness errors, each tied to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("{0}")]
    Core(#[from] picard_core::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("{0} suite check(s) failed")]
    SuiteFailure(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use picard_core::Error as E;
        match self {
            CliError::SuiteFailure(_) => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Core(e) => match e {
                E::Domain(_) | E::NotInvertible { .. } | E::Pole(_) | E::Precondition(_) => 2,
                E::Overflow(_)
                | E::Size { .. }
                | E::FactorizationBudget(_)
                | E::Regime { .. }
                | E::Accuracy { .. }
                | E::Budget(_) => 3,
            },
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
