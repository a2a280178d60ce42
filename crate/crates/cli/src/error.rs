use std::process::ExitCode;

use thiserror::Error;

/// Failures of a run, split by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid configuration, unreadable input or a violated constraint.
    #[error("config error: {0}")]
    Config(String),
    /// A computation did not meet its tolerance or failed outright.
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("i/o error: {context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Numeric(_) => ExitCode::from(1),
            CliError::Config(_) | CliError::Io { .. } => ExitCode::from(2),
        }
    }

    pub(crate) fn io(context: impl Into<String>) -> impl FnOnce(std::io::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Io { context, source }
    }
}

/// Map a core error raised while validating `ctx` to a config error.
pub(crate) fn invalid(ctx: &str) -> impl Fn(weber_orr_core::Error) -> CliError + '_ {
    move |e| CliError::Config(format!("{ctx}: {e}"))
}
