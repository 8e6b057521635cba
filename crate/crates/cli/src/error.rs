use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Fs(#[from] gravhelm_core::FsError),
    #[error(transparent)]
    Batch(#[from] gravhelm_core::BatchError),
    #[error(transparent)]
    Bie(#[from] gravhelm_core::BieError),
    #[error(transparent)]
    SpecFun(#[from] gravhelm_core::SpecFunError),
}
