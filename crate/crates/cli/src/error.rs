use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid arguments: {0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("{path}:{line}: time {t} does not increase")]
    NonMonotoneTime { path: PathBuf, line: u64, t: f64 },

    #[error(transparent)]
    Model(#[from] gstt::Error),
}

/// Exit codes, one per failure kind. Printed by `--help`.
pub const EXIT_CODE_TABLE: &str = "\
Exit codes:
   0  success
   2  invalid arguments
   3  I/O failure
   4  CSV parse error
   5  time column not strictly increasing
   6  invalid time scale
   7  timestamp not on the time scale
   8  scattered point of the time scale has no sample
   9  too few samples
  10  design matrix is singular
  11  coefficient is not regressive on the time scale
  12  fractional order or grid out of domain
  13  series misaligned
  14  all actual values are zero
  15  empty input
  16  other numerical error";

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use gstt::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Parse { .. } => 4,
            CliError::NonMonotoneTime { .. } => 5,
            CliError::Model(e) => match e {
                E::NonMonotoneTime(_) => 5,
                E::InvalidTimeScale(_) => 6,
                E::Membership(_) | E::NotANode(_) => 7,
                E::MissingScatteredSample(_) => 8,
                E::TooFewSamples { .. } => 9,
                E::SingularDesign => 10,
                E::Regressivity { .. } => 11,
                E::Domain(_) => 12,
                E::Alignment(_) => 13,
                E::AllZeroActuals => 14,
                E::EmptyInput => 15,
                E::InsufficientNodes { .. } | E::Order { .. } | E::Branch { .. } => 16,
            },
        }
    }
}
