//! Command-line front end for `divseq-core`.
//!
//! [`run`] executes exactly one subcommand and returns the process exit code:
//! 0 on success, 2 on usage errors, 3 on resource or precision errors and 4
//! when the computation produced a mathematically meaningful negative result.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use clap::Parser;
use serde_json::{json, Map, Value};

mod args;
mod commands;
pub mod envelope;
pub mod reproduce;
mod target;

pub use args::Cli;
pub use envelope::{bfile, parse_bfile, Envelope, Status};
pub use target::Target;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_FINDING: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Resource,
    Finding,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
    /// Flag that raises the bound that was hit.
    pub hint: Option<&'static str>,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            kind: ErrorKind::Usage,
            message: message.into(),
            hint: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Usage => EXIT_USAGE,
            ErrorKind::Resource => EXIT_RESOURCE,
            ErrorKind::Finding => EXIT_FINDING,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)?;
        if let Some(flag) = self.hint {
            write!(f, " (raise it with {flag})")?;
        }
        Ok(())
    }
}

impl From<divseq_core::Error> for CliError {
    fn from(e: divseq_core::Error) -> Self {
        use divseq_core::Error as E;
        let (kind, hint) = match &e {
            E::OracleBoundExceeded { .. } => (ErrorKind::Resource, Some("--oracle-bound")),
            E::ResourceLimit { what, .. } if what.contains("divisor") => {
                (ErrorKind::Resource, Some("--divisor-cap"))
            }
            E::ResourceLimit { what, .. } if what.contains("bit length") => {
                (ErrorKind::Resource, Some("--max-bits"))
            }
            E::ResourceLimit { .. } => (ErrorKind::Resource, None),
            E::SimulationCapExceeded { .. } => (ErrorKind::Resource, Some("--sim-cap")),
            E::InsufficientPrecision { .. } => (ErrorKind::Resource, Some("--terms")),
            E::NoQualifyingPair { .. } => (ErrorKind::Resource, None),
            E::EmptyIntersection { .. } => (ErrorKind::Finding, None),
            E::InvalidArgument(_) => (ErrorKind::Usage, None),
        };
        CliError {
            kind,
            message: e.to_string(),
            hint,
        }
    }
}

/// What a subcommand produced, before formatting.
#[derive(Debug, Clone)]
pub struct Output {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub result: Value,
    pub status: Status,
    pub plain: String,
    /// Present for commands with a natural `index value` rendering.
    pub bfile: Option<String>,
    /// Written to standard error.
    pub diagnostic: Option<String>,
}

impl Output {
    pub fn envelope(&self) -> Envelope {
        Envelope {
            command: self.command.clone(),
            parameters: self.parameters.clone(),
            result: self.result.clone(),
            status: self.status,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => EXIT_OK,
            Status::Finding => EXIT_FINDING,
            Status::Error => EXIT_RESOURCE,
        }
    }
}

/// Parses `argv` (including the program name) and runs one subcommand.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            return match e.kind() {
                K::DisplayHelp | K::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let limits = cli.limits.resolve();
    let name = commands::command_name(&cli.command);
    match commands::execute(&cli.command, &limits) {
        Ok(output) => {
            if let Some(d) = &output.diagnostic {
                let _ = writeln!(err, "{d}");
            }
            let text = if cli.json {
                output.envelope().to_json()
            } else if cli.bfile {
                match &output.bfile {
                    Some(b) => b.clone(),
                    None => {
                        let _ = writeln!(
                            err,
                            "error: --bfile is only available for `seq` and `divisors`"
                        );
                        return EXIT_USAGE;
                    }
                }
            } else {
                output.plain.clone()
            };
            let _ = out.write_all(text.as_bytes());
            output.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if cli.json {
                let env = Envelope {
                    command: name,
                    parameters: Map::new(),
                    result: json!({ "error": e.to_string() }),
                    status: if e.kind == ErrorKind::Finding {
                        Status::Finding
                    } else {
                        Status::Error
                    },
                };
                let _ = out.write_all(env.to_json().as_bytes());
            }
            e.exit_code()
        }
    }
}
