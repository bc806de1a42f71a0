//! Command-line front end for `modinv-core`: argument parsing, check
//! orchestration, JSON and text reports, and an advisory dimension cache.

pub mod cache;
pub mod config;
pub mod report;
pub mod run;

pub use config::{Cli, RunConfig};
pub use report::ReportDocument;
pub use run::{run, RunError};
