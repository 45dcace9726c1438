use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, configuration or input files. Exit code 2.
    #[error("{0}")]
    Usage(String),
    /// Failure while computing or writing results. Exit code 1.
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl From<ansatz_core::Error> for CliError {
    fn from(e: ansatz_core::Error) -> Self {
        use ansatz_core::Error as E;
        match e {
            E::Numerical { .. } | E::Io(_) => CliError::Runtime(e.to_string()),
            E::Capacity(_) | E::Structural(_) | E::Contract(_) | E::Parse(_) => {
                CliError::Usage(e.to_string())
            }
        }
    }
}
