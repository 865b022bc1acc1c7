//! Library side of the `novikov` command: job files, reports and the corpus selftest.

pub mod commands;
pub mod error;
pub mod job;
pub mod report;
pub mod selftest;

pub use commands::{run_certify, run_compute, run_sample};
pub use error::{CliError, Result};
pub use job::{ClassSpec, JobInput, JobOptions, JobSpec};
