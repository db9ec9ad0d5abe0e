//! File formats and command implementations behind the `multimodal` tool.

pub mod cli;
mod error;
pub mod report;
pub mod table;
pub mod trace;

pub use cli::run;
pub use error::CliError;
