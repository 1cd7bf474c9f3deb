use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub witness: String,
}

/// Everything a command prints. Text output is `lines` followed by the check
/// list; structured output is this struct as JSON.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<String>,
    pub lines: Vec<String>,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub data: serde_json::Value,
    pub exit_code: i32,
}

impl RunReport {
    pub fn new(command: &str, inputs: Vec<String>) -> Self {
        RunReport {
            command: command.to_string(),
            inputs,
            lines: Vec::new(),
            checks: Vec::new(),
            data: serde_json::Value::Null,
            exit_code: 0,
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, witness: impl Into<String>) {
        self.checks.push(CheckResult { name: name.into(), passed, witness: witness.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn finish(mut self) -> Self {
        self.exit_code = if self.passed() { 0 } else { 1 };
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => {
                let mut out = String::new();
                for l in &self.lines {
                    let _ = writeln!(out, "{l}");
                }
                if !self.checks.is_empty() {
                    if !self.lines.is_empty() {
                        out.push('\n');
                    }
                    for c in &self.checks {
                        let mark = if c.passed { "ok  " } else { "FAIL" };
                        if c.witness.is_empty() {
                            let _ = writeln!(out, "{mark} {}", c.name);
                        } else {
                            let _ = writeln!(out, "{mark} {}: {}", c.name, c.witness);
                        }
                    }
                    let good = self.checks.iter().filter(|c| c.passed).count();
                    let verdict = if self.passed() { "PASS" } else { "FAIL" };
                    let _ = writeln!(out, "{verdict} ({good}/{} checks)", self.checks.len());
                }
                out
            }
        }
    }
}

/// Input problems; these exit with code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}
