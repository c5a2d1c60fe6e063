//! The `haar` command: parse a monomial, integrate it exactly, and
//! optionally evaluate it or check it by sampling.
//!
//! Exit codes: 0 success, 1 usage error, 2 pole at the requested `d`,
//! 3 Monte Carlo verification failure.

pub mod output;
pub mod request;
pub mod run;

pub use output::{Output, OutputParseError};
pub use request::{parse_matrix, Args, OutputFormat, Request, VerifyRequest};
pub use run::{run, run_args, Outcome};

use haar_core::ArithError;
use haar_mc::McError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Clap(clap::Error),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Pole(ArithError),
    #[error(transparent)]
    Mc(McError),
}
