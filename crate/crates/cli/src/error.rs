// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("io: {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("numerical: {0}")]
    Numerical(#[from] qthermo_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(_) => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Numerical(_) => "numerical",
        }
    }

    /// `error=<kind> reason="<message>"` on one line.
    pub fn diagnostic(&self) -> String {
        let reason = match self {
            CliError::Config(m) | CliError::Usage(m) => m.clone(),
            CliError::Io { path, source } => format!("{}: {source}", path.display()),
            CliError::Numerical(e) => e.to_string(),
        };
        let reason = reason.replace(['\n', '\r'], " ").replace('"', "'");
        format!("error={} reason=\"{}\"", self.kind(), reason)
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
