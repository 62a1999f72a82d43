use std::path::PathBuf;

/// Errors of the command-line layer. Each maps to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cannot read {path}: {source}")]
    ReadConfig { path: PathBuf, source: std::io::Error },

    #[error("cannot parse configuration: {0}")]
    ParseConfig(#[from] serde_json::Error),

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Core(#[from] superfock::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Exit code when every check passes.
pub const EXIT_OK: u8 = 0;
/// Exit code when a check fails.
pub const EXIT_CHECK_FAILED: u8 = 1;
/// Exit code for usage and configuration errors.
pub const EXIT_USAGE: u8 = 2;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Write { .. } => EXIT_CHECK_FAILED,
            _ => EXIT_USAGE,
        }
    }
}
