use std::path::PathBuf;

use ehvac_core::Error as CoreError;

/// Errors surfaced by the scenario runner.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid config: {field}: {message}")]
    Invalid { field: String, message: String },

    #[error("cannot read config {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid config: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("numeric non-convergence at {count} point(s); first: {first}")]
    NotConverged { count: usize, first: String },

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Invalid {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Process exit code: 2 for configuration problems, 3 for quadrature
    /// non-convergence, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid { .. } | CliError::Parse(_) | CliError::Read { .. } => 2,
            CliError::NotConverged { .. } => 3,
            CliError::Core(e) if e.is_convergence() => 3,
            CliError::Core(CoreError::Domain { .. } | CoreError::UnsupportedGeometry { .. }) => 2,
            _ => 1,
        }
    }
}
