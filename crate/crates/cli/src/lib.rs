//! Command-line front end: file formats, fixtures, reports and table
//! reproduction for the `pidtensor` library.

pub mod commands;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod report;
pub mod reproduce;

pub use commands::{run, Cli};
pub use error::{CliError, Result};
