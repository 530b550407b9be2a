//! Batch front end for grey forecasting on time scales: CSV ingestion,
//! time-scale parsing, and the `fit`, `forecast`, `integrate` and
//! `frac-compare` commands.

pub mod error;
pub mod input;
pub mod run;
pub mod svg;

pub use error::{CliError, EXIT_CODE_TABLE};
pub use run::{run, RunConfig, Subcommand};
