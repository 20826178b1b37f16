//! Library surface of the `quadchroma` binary.
//!
//! The binary is a thin wrapper over [`run`]; everything else lives here so
//! that integration tests can exercise argument handling, report
//! construction, and serialization directly.

pub mod args;
pub mod exec;
pub mod report;

pub use args::Cli;
pub use exec::{run, CliError};
pub use report::RunReport;
