//! Library half of the `anisogauge` command: argument-independent command
//! logic, reports and output formats.

pub mod commands;
pub mod render;
pub mod report;

pub use commands::{CliError, CliResult};
pub use render::{render, Format};
pub use report::RunReport;
