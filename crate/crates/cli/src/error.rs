use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("{path}: {source}")]
    Body {
        path: PathBuf,
        source: shapeorbit::Error,
    },

    #[error(transparent)]
    Core(#[from] shapeorbit::Error),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for bad input, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        use shapeorbit::Error as E;
        let core = match self {
            CliError::Body { source, .. } | CliError::Core(source) => source,
            CliError::Read { .. } | CliError::Usage(_) => return 2,
            CliError::Write(_) | CliError::Csv(_) => return 3,
        };
        match core {
            E::NumericalFailure(_) | E::Infeasible | E::Unbounded => 3,
            _ => 2,
        }
    }
}
