//! Command-line front end for the `azumaya` toolkit: dataset loading and
//! validation, command dispatch, JSON reports, and a bundled demo corpus.

pub mod commands;
pub mod corpus;
pub mod dataset;
pub mod error;

pub use commands::{run, Cli, Command};
pub use error::{CliError, CliResult};
