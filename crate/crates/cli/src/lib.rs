//! Library side of the `dualcavity` command-line tool: configuration
//! ingestion, output formats, the five subcommands, and the verification
//! suite. `main.rs` only parses arguments and maps errors to exit codes.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod manifest;
pub mod rng;
pub mod tolerances;
pub mod verify;

pub use error::CliError;

pub type Result<T> = std::result::Result<T, CliError>;
