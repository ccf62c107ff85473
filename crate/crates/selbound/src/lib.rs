//! Command line, TOML manifests and the threaded census harness around
//! [`selbound_core`].

pub mod cli;
pub mod config;
pub mod stats;

/// Failures of the command-line layer.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] selbound_core::Error),
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad input, 3 when a valid computation could not be completed.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if !e.is_input_error() => 3,
            CliError::Io(_) => 3,
            _ => 2,
        }
    }
}
