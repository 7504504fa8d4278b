use cyclic_cubic_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("thread pool: {0}")]
    Pool(String),
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Csv(_) => EXIT_INPUT,
            CliError::Core(Error::ZeroDenominator | Error::Reducible { .. }) => EXIT_INPUT,
            CliError::Core(_) | CliError::Pool(_) => EXIT_INTERNAL,
            CliError::Io(_) | CliError::Json(_) => EXIT_FAILURE,
        }
    }
}
