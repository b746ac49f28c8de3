use thiserror::Error;

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const DOMAIN: i32 = 1;
    pub const RESOURCE: i32 = 2;
    pub const USAGE: i32 = 64;
    pub const DATA: i32 = 65;
    pub const NO_INPUT: i32 = 66;
    pub const INTERNAL: i32 = 70;
    pub const CONFIG: i32 = 78;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cmorbit_core::Error),
    #[error("{source_name}:{line}:{column}: {message}")]
    Json { source_name: String, line: usize, column: usize, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use cmorbit_core::ErrorKind;
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Domain => exit::DOMAIN,
                ErrorKind::Resource => exit::RESOURCE,
                ErrorKind::Internal => exit::INTERNAL,
            },
            CliError::Json { .. } => exit::DATA,
            CliError::Io { .. } => exit::NO_INPUT,
            CliError::Config(_) => exit::CONFIG,
            CliError::Usage(_) => exit::USAGE,
        }
    }
}
