//! Command-line front end for `stabilitylab`.
//!
//! [`run`] parses the arguments, executes one subcommand and writes either a
//! plain-text table or a pretty-printed JSON document. Exit codes: 0 on
//! success, 2 on argument and input errors, 3 when a capacity cap is hit,
//! 1 on internal failures.

mod args;
mod caps;
mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use stabilitylab::{Error, ErrorKind};

pub use args::{Cli, Command, Format};
pub use commands::Output;

/// Environment variable naming a cap-override file.
pub const CAPS_ENV: &str = "STABILITYLAB_CAPS";

pub const EXIT_OK: u8 = 0;
pub const EXIT_INTERNAL: u8 = 1;
pub const EXIT_ARGUMENT: u8 = 2;
pub const EXIT_CAPACITY: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_ARGUMENT,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Argument => EXIT_ARGUMENT,
                ErrorKind::Capacity => EXIT_CAPACITY,
                ErrorKind::Internal => EXIT_INTERNAL,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

/// Runs one invocation. `caps_file` is the value of [`CAPS_ENV`], passed in
/// so callers control the environment.
pub fn run<I, T>(argv: I, caps_file: Option<PathBuf>, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ARGUMENT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, caps_file) {
        Ok(text) => {
            let written = match &cli.common.output {
                Some(path) => std::fs::write(path, &text),
                None => out.write_all(text.as_bytes()),
            };
            match written {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: cannot write output: {e}");
                    EXIT_ARGUMENT
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Executes the parsed command and renders it in the requested format.
pub fn execute(cli: &Cli, caps_file: Option<PathBuf>) -> Result<String, CliError> {
    let limits = caps::resolve(&cli.common, caps_file.as_deref())?;
    let output = commands::dispatch(&cli.command, &limits)?;
    Ok(match cli.common.format {
        Format::Table => output.to_table(),
        Format::Structured => output.to_structured(),
    })
}
