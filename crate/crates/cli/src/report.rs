//! Run reports, failure classification and rendering.
//!
//! Reports never carry timing; wall time goes to stderr so that reports for
//! identical inputs and seed are byte-identical.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::Value;
use sigcalc::{Error, ErrorKind};

pub const EXIT_INVARIANT: u8 = 1;
pub const EXIT_PRECONDITION: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_CONDITION: u8 = 4;
pub const EXIT_ASSUMPTION: u8 = 5;

/// Decimal-string rendering for every number in a report.
pub fn num(x: impl Display) -> Value {
    Value::String(x.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub seed: String,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub attempts: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunReport {
    pub fn new(command: &str, seed: u64) -> Self {
        RunReport {
            command: command.to_string(),
            seed: seed.to_string(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            cross_check: None,
            attempts: BTreeMap::new(),
            error: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.outputs.insert(key.to_string(), value.into());
        self
    }

    pub fn attempt(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.attempts.insert(key.to_string(), num(value));
        self
    }

    /// Records a cross-check verdict; a mismatch turns the run into an
    /// invariant failure.
    pub fn check(&mut self, ok: bool) -> &mut Self {
        self.cross_check = Some(if ok { "ok" } else { "mismatch" }.to_string());
        self
    }

    pub fn mismatched(&self) -> bool {
        self.cross_check.as_deref() == Some("mismatch")
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return serde_json::to_string_pretty(self).expect("report serializes");
        }
        let mut out = String::new();
        for (k, v) in &self.outputs {
            match v {
                Value::String(s) => out.push_str(&format!("{k} = {s}\n")),
                other => out.push_str(&format!("{k} = {other}\n")),
            }
        }
        if let Some(c) = &self.cross_check {
            out.push_str(&format!("cross_check = {c}\n"));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error = {e}\n"));
        }
        out
    }
}

/// A failed run: the exit code, a message, and whatever was reported so far.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    pub report: Option<Box<RunReport>>,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into(), report: None }
    }

    pub fn with_report(mut self, mut report: RunReport) -> Self {
        report.error = Some(self.message.clone());
        self.report = Some(Box::new(report));
        self
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e.kind() {
        ErrorKind::Precondition => EXIT_PRECONDITION,
        ErrorKind::Budget => EXIT_BUDGET,
        ErrorKind::Condition => EXIT_CONDITION,
        ErrorKind::Assumption => EXIT_ASSUMPTION,
        ErrorKind::Verification => EXIT_INVARIANT,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(exit_code(&e), e.to_string())
    }
}

pub type Outcome = std::result::Result<RunReport, Failure>;

/// Prints the report (or the failure's partial report) and maps to an exit code.
pub fn finish(outcome: Outcome, json: bool) -> ExitCode {
    match outcome {
        Ok(report) => {
            print!("{}", ensure_newline(report.render(json)));
            if report.mismatched() {
                eprintln!("error: cross-check mismatch");
                ExitCode::from(EXIT_INVARIANT)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            if let Some(r) = &f.report {
                print!("{}", ensure_newline(r.render(json)));
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}
