//! Front end for the `starconfig` command: input parsing, the on-disk Tutte
//! cache, and the report each subcommand prints.

pub mod cache;
pub mod input;
pub mod report;
pub mod run;

pub use cache::TutteCache;
pub use input::{parse_input, InputDocument};
pub use report::RunReport;
pub use run::{run, Command, RunOptions};

/// Exit status for a failed run: the library's code when the error came
/// from there, otherwise 1 (bad input, I/O).
pub fn exit_code(err: &anyhow::Error) -> i32 {
    err.downcast_ref::<starconfig::Error>().map_or(1, starconfig::Error::exit_code)
}

/// Exit status when a run finished but one of its checks failed.
pub const VIOLATION_EXIT: i32 = 3;
