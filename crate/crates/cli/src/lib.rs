//! Command-line front end: parse a JSON model, run one computation, print a
//! report.
//!
//! Exit codes: 0 on success, 1 when a computation fails a numerical check or
//! the verify suite fails, 2 on invalid input or usage, 3 when a dimension or
//! vertex budget is exceeded.

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use xorgap::Error;

pub mod args;
pub mod commands;
pub mod report;
pub mod verify;

pub use args::Cli;
pub use commands::execute;
pub use report::Report;

pub fn exit_code(e: &Error) -> i32 {
    if e.is_budget() {
        return 3;
    }
    match e {
        Error::Numerical(_) | Error::Infeasible | Error::Unbounded => 1,
        _ => 2,
    }
}

pub fn parse_args<I, T>(args: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(args)
}

/// Runs one command, writing the report to `out` and diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match parse_args(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let _ = out.write_all(report.render(cli.format).as_bytes());
            match report {
                Report::Verify(v) if !v.pass => 1,
                _ => 0,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
