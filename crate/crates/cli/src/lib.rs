//! Library half of the lab frontend: report model, exhaustive verifiers, and
//! configuration. The binary in `main.rs` is a thin argument-parsing shell
//! over these pieces so the acceptance suite can drive them directly.

pub mod checks;
pub mod config;
pub mod report;

pub use checks::{predicted_max_ord, run_verify, CheckContext, CheckError, VerifyTarget};
pub use config::{resolve, Settings};
pub use report::{OutputFormat, Report, Row, CSV_HEADER, SCHEMA_VERSION};
