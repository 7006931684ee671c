//! IO, file formats, parallel drivers and the command-line interface on top of
//! [`kstrong_core`].

pub mod cli;
pub mod error;
pub mod json;
pub mod parallel;
pub mod sample;

pub use error::{CliError, Result};
