//! Command-line driver: instance documents, document checks and the suite
//! runner behind the `threefold` binary.

mod app;
pub mod document;
pub mod verify;

pub use app::{run, ReportDocument, EXIT_FAIL, EXIT_INVALID, EXIT_PASS, EXIT_USAGE};
