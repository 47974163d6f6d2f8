//! Task-file driver: parse a task file, run its tasks against the core
//! library, and produce a text summary and a JSON report.

pub mod error;
pub mod execute;
pub mod program;
pub mod report;
pub mod taskfile;

pub use error::CliError;
pub use report::{check_report, run_source, Report, RunOptions, Status};
