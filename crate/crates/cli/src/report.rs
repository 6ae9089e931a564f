use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    /// Input name → sha256 of its bytes.
    pub inputs: BTreeMap<String, String>,
    pub outputs: Value,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
}

#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Schema,
    Validation,
    Io,
}

/// A failure that aborts a command; maps to the exit code.
#[derive(Debug)]
pub struct Failure {
    pub kind: ErrorKind,
    pub message: String,
}

impl Failure {
    pub fn schema(msg: impl fmt::Display) -> Self {
        Failure { kind: ErrorKind::Schema, message: msg.to_string() }
    }

    pub fn validation(msg: impl fmt::Display) -> Self {
        Failure { kind: ErrorKind::Validation, message: msg.to_string() }
    }

    pub fn io(msg: impl fmt::Display) -> Self {
        Failure { kind: ErrorKind::Io, message: msg.to_string() }
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunReport {
    pub fn new(command: &'static str) -> Self {
        RunReport {
            command,
            inputs: BTreeMap::new(),
            outputs: Value::Object(Default::default()),
            checks: Vec::new(),
            error: None,
        }
    }

    pub fn input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.insert(name.to_string(), digest(bytes));
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check { name: name.into(), passed });
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("outputs serialize");
        self.outputs
            .as_object_mut()
            .expect("outputs is an object")
            .insert(key.to_string(), v);
    }

    pub fn fail(&mut self, f: Failure) {
        self.error = Some(ErrorReport { kind: f.kind, message: f.message });
    }

    pub fn exit_code(&self) -> i32 {
        match &self.error {
            Some(ErrorReport { kind: ErrorKind::Schema | ErrorKind::Io, .. }) => 2,
            Some(_) => 1,
            None if self.checks.iter().any(|c| !c.passed) => 1,
            None => 0,
        }
    }

    /// Short human-readable account for stderr.
    pub fn summary(&self) -> String {
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let mut s = format!("{}: {passed}/{} checks passed", self.command, self.checks.len());
        for c in self.checks.iter().filter(|c| !c.passed) {
            s.push_str(&format!("\n  failed: {}", c.name));
        }
        if let Some(e) = &self.error {
            s.push_str(&format!("\n  {:?} error: {}", e.kind, e.message));
        }
        s
    }
}
