use thiserror::Error;

/// Anything that stops a run before checks can produce verdicts. These
/// all exit with status 2; check failures never land here.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }
}

impl From<ftvs_core::CoreError> for CliError {
    fn from(e: ftvs_core::CoreError) -> Self {
        CliError::Config(e.to_string())
    }
}
