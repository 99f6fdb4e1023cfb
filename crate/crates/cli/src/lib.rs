//! Command-line front end for `tscale-core`: parses time-scale specs, runs
//! evaluations, identity checks, convergence studies and solvers, and emits
//! CSV or JSON.

// `!(x > 0.0)` deliberately rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod scale_spec;

pub use args::Cli;
pub use commands::{execute, Report};
pub use error::CliError;
pub use scale_spec::{parse_scale, render_scale};

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

/// Parses `args`, runs the command and writes its output. Returns the
/// process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command).and_then(write_report) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("tscale: {e}");
            e.exit_code()
        }
    }
}

fn write_report(report: Report) -> Result<u8, CliError> {
    match &report.out {
        Some(path) => std::fs::write(path, &report.text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(report.text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(report.code)
}
