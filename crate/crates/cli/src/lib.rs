//! Front end for `harmonic-kernels`: evaluate kernels, certify identities,
//! export sweeps and reports.

pub mod args;
pub mod eval;
pub mod exec;
pub mod format;

use std::ffi::OsString;
use std::process::ExitCode;

pub use args::{parse_args, CliConfig, Command, Format, Job, UsageError};
pub use exec::{execute, EXIT_FAIL, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE};

/// Parses `argv` (program name first), runs it and maps the outcome to an exit code.
pub fn run<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(argv) {
        Ok(config) => ExitCode::from(execute(&config)),
        Err(UsageError::Display(text)) => {
            print!("{text}");
            ExitCode::from(EXIT_OK)
        }
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("run `harmonic-kernels --help` for usage");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
