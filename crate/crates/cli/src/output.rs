use std::process::ExitCode;

use serde_json::{json, Value};
use shamsuddin_core::Error;

use crate::Common;

/// Successful command output.
pub struct Report {
    pub lines: Vec<String>,
    pub json: Value,
    /// Boolean verdict used by `--exit-status`, if the command has one.
    pub verdict: Option<bool>,
}

impl Report {
    pub fn emit(self, common: &Common) -> ExitCode {
        if common.json {
            println!("{}", self.json);
        } else {
            for line in &self.lines {
                println!("{line}");
            }
        }
        match self.verdict {
            Some(false) if common.exit_status => ExitCode::from(1),
            _ => ExitCode::SUCCESS,
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    /// The input could not be read.
    Input(String),
    Core(Error),
    /// A constructed witness failed re-verification and was withheld.
    Unverified(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<shamsuddin_core::ParseError> for Failure {
    fn from(e: shamsuddin_core::ParseError) -> Self {
        Failure::Core(e.into())
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Core(e) if e.is_parse() => 2,
            Failure::Core(_) => 3,
            Failure::Unverified(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Input(_) => "input",
            Failure::Core(e) if e.is_parse() => "parse",
            Failure::Core(_) => "semantic",
            Failure::Unverified(_) => "unverified",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Input(m) | Failure::Unverified(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }

    pub fn emit(&self, common: &Common) -> ExitCode {
        eprintln!("error: {}", self.message());
        if common.json {
            let mut err = json!({ "kind": self.kind(), "message": self.message() });
            if let Failure::Core(Error::Parse(p)) = self {
                err["pos"] = json!(p.pos);
            }
            println!("{}", json!({ "error": err }));
        }
        ExitCode::from(self.code())
    }
}
