use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("manifest line {line}: {message}")]
    Manifest { line: usize, message: String },
    #[error(transparent)]
    Library(#[from] lieform::Error),
}

impl CliError {
    /// 3 for undecided verdicts, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(
                lieform::Error::OracleUndecided(_)
                | lieform::Error::UncertifiedDecomposition
                | lieform::Error::TVanishes,
            ) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
