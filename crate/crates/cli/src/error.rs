use std::path::PathBuf;

use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Sim(#[from] qusim::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("failed to write report: {0}")]
    Report(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Short stable tag for scripts that parse the error output.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Sim(qusim::Error::Parse { .. }) => "parse",
            CliError::Sim(qusim::Error::Allocation { .. }) => "allocation",
            CliError::Sim(_) => "simulation",
            CliError::Io { .. } => "io",
            CliError::Report(_) => "report",
            CliError::Usage(_) => "usage",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a> {
            kind: &'a str,
            message: String,
            #[serde(skip_serializing_if = "Option::is_none")]
            position: Option<usize>,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            error: Body<'a>,
        }
        let position = match self {
            CliError::Sim(qusim::Error::Parse { position, .. }) => Some(*position),
            _ => None,
        };
        let doc = Doc {
            error: Body {
                kind: self.kind(),
                message: self.to_string(),
                position,
            },
        };
        serde_json::to_string(&doc).expect("error document serializes")
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
