use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<nboson_core::Error> for CliError {
    fn from(e: nboson_core::Error) -> Self {
        match e {
            nboson_core::Error::InvalidParameter(m) => CliError::Usage(m),
            other => CliError::Numerical(other.to_string()),
        }
    }
}
