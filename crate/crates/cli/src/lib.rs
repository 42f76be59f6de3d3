//! Batch front-end for the `gitplane` library: resolve a request into a
//! job, run it into a JSON report, and replay reports.

pub mod args;
mod error;
pub mod replay;
pub mod report;
pub mod request;

pub use error::CliError;
pub use replay::{replay, replay_detailed, replay_json, ReplayOutcome};
pub use report::{run, run_job, Finding, Report};
pub use request::{AnalysisRequest, Command, Job};
