use std::fmt;
use std::process::ExitCode;

use planar_rough::Error;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::config::Config;

/// Why a command did not produce a report.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Cap(String),
    Runtime(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Runtime(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Runtime(_) => "error",
            Failure::Usage(_) => "usage",
            Failure::Cap(_) => "cap",
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Cap(m) | Failure::Runtime(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DegreeCap { .. } => Failure::Cap(e.to_string()),
            Error::Syntax { .. }
            | Error::UnknownLetter { .. }
            | Error::EmptyForest
            | Error::OutOfDomain(_)
            | Error::Gamma(_)
            | Error::Invalid(_) => Failure::Usage(e.to_string()),
            Error::UndefinedSum(..) | Error::Resolution { .. } | Error::ChenResidual { .. } => {
                Failure::Runtime(e.to_string())
            }
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    /// Counts or tolerances on success, the failing instance otherwise.
    pub witness: String,
}

impl CheckLine {
    pub fn new(name: impl Into<String>, passed: bool, witness: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            witness: witness.into(),
        }
    }
}

/// Everything a command produces. Field names are part of the JSON format.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub config: Config,
    pub passed: bool,
    pub checks: Vec<CheckLine>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<f64>,
    /// Plain-text rendering of `result`.
    #[serde(skip)]
    pub text: String,
}

impl Report {
    pub fn exit_code(&self) -> ExitCode {
        if self.passed {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }
    }
}

/// What a subcommand hands back before the envelope is filled in.
pub struct Outcome {
    pub text: String,
    pub result: Value,
    pub checks: Vec<CheckLine>,
}

impl Outcome {
    pub fn new(text: impl Into<String>, result: Value) -> Self {
        Self {
            text: text.into(),
            result,
            checks: Vec::new(),
        }
    }

    pub fn check(mut self, c: CheckLine) -> Self {
        self.checks.push(c);
        self
    }
}

/// SHA-256 over the command line, the resolved config and every input file.
#[derive(Default)]
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    pub fn feed(&mut self, label: &str, bytes: &[u8]) {
        self.hasher.update(label.as_bytes());
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    pub fn read(&mut self, path: &str) -> Result<String, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
        self.feed(path, text.as_bytes());
        Ok(text)
    }

    pub fn finish(self) -> String {
        format!("{:x}", self.hasher.finalize())
    }
}
