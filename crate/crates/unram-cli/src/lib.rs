//! Job descriptions and their evaluation for the `unram` binary.
//!
//! Every subcommand is turned into a [`JobSpec`] and evaluated by [`run`],
//! so `unram run job.json` and the flag interface share one code path.

mod commands;
mod parse;

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub use parse::{parse_decomposition, parse_mu};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Describe,
    Bgmu,
    Weights,
    CheckCharacter,
    Tilting,
    TiltingTable,
    Averaging,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Describe => "describe",
            Command::Bgmu => "bgmu",
            Command::Weights => "weights",
            Command::CheckCharacter => "check-character",
            Command::Tilting => "tilting",
            Command::TiltingTable => "tilting-table",
            Command::Averaging => "averaging",
        }
    }

    /// Parameter keys accepted by the command.
    pub fn keys(self) -> &'static [&'static str] {
        match self {
            Command::Describe | Command::TiltingTable => &["cap"],
            Command::Bgmu => &["mu", "cap"],
            Command::Weights => &["mu", "coinvariant", "cap"],
            Command::CheckCharacter => &["chi", "phi", "level", "mu", "mode", "decomposition", "cap"],
            Command::Tilting => &["mu", "ell", "cap"],
            Command::Averaging => &["mu", "phi", "chi", "cap"],
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Tsv,
}

/// One invocation: a group, a command and its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<String>,
    pub command: Command,
    #[serde(default)]
    pub parameters: BTreeMap<String, String>,
    #[serde(default)]
    pub output: Format,
}

/// Exit status and emitted text of a job.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub(crate) struct Failure(pub String);

impl From<unram::Error> for Failure {
    fn from(e: unram::Error) -> Failure {
        Failure(e.to_string())
    }
}

pub(crate) struct Emitted {
    pub check_failed: bool,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(job: &JobSpec) -> Outcome {
    match commands::dispatch(job) {
        Ok(e) => Outcome {
            status: if e.check_failed { EXIT_CHECK_FAILED } else { EXIT_OK },
            stdout: e.stdout,
            stderr: e.stderr,
        },
        Err(Failure(msg)) => Outcome { status: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

/// Parse a job file; errors carry the line and column of the offending token.
pub fn parse_job(text: &str) -> Result<JobSpec, String> {
    serde_json::from_str(text).map_err(|e| format!("job file: {e}"))
}
