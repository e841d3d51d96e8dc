//! Session files, their execution against the containment lab, and reports.

pub mod report;
pub mod run;
pub mod session;

pub use report::{emit_report, Format, Report, Status};
pub use run::{run, Config};
pub use session::{parse_session, Diagnostic, Session};
