//! File formats and command-line front end for `depmeter-core`.

pub mod cli;
pub mod commands;
pub mod error;
pub mod input;
pub mod output;

pub use error::{CliError, CliResult};
