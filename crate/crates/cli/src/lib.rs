//! Command-line front end for `bernstein-ld`.
//!
//! ```text
//! bernstein-ld bound <kind> --x .. --r .. [--n ..] [--delta ..] [--alpha ..]
//! bernstein-ld figure {f2 | ratio-bn | ratios} ..
//! bernstein-ld verify {lemmas | envelopes | mc} --dist .. ..
//! ```
//!
//! Exit codes: 0 success, 2 bound outside its proved range, 3 a verified
//! claim failed, 64 usage or input error, 74 I/O error.

pub mod args;
mod bound;
mod figure;
mod output;
mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

pub use output::{format_num, parse_range};
pub use verify::{load_dist, CheckRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OUT_OF_RANGE: i32 = 2;
pub const EXIT_CLAIM: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(bernstein_ld::Error),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "I/O error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<bernstein_ld::Error> for CliError {
    fn from(e: bernstein_ld::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Parses `argv` and runs the command, writing results to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Bound(a) => bound::run(&a, out),
        Command::Figure(f) => figure::run(&f, out, err),
        Command::Verify(v) => verify::run(&v, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
