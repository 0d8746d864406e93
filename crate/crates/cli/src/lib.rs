//! Library half of the `qt` binary: the text formats, input loading and the subcommands.

pub mod commands;
pub mod error;
pub mod format;
pub mod input;

pub use error::{CliError, CliResult};
