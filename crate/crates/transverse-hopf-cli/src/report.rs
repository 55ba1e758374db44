//! Run configuration and the reports every command emits.

use std::fmt::Display;
use std::fmt::Write as _;

use serde::Serialize;
use transverse_hopf::suite::SuiteReport;

use crate::parse::split_terms;

/// Parameters recorded verbatim in every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub n: u8,
    pub max_degree: usize,
    pub truncation: u32,
    pub seed: u64,
    pub samples: usize,
}

impl Display for RunConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "n={} max_degree={} truncation={} seed={} samples={}",
            self.n, self.max_degree, self.truncation, self.seed, self.samples
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub name: String,
    pub cases: usize,
    pub passed: bool,
}

/// The outcome of one command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub command: String,
    pub result_terms: Vec<String>,
    pub checks: Vec<CheckRecord>,
    pub witnesses: Vec<String>,
    #[serde(skip)]
    records: Vec<(String, String)>,
}

impl Report {
    pub fn new(config: RunConfig, command: &str) -> Self {
        Report {
            config,
            command: command.to_string(),
            result_terms: Vec::new(),
            checks: Vec::new(),
            witnesses: Vec::new(),
            records: Vec::new(),
        }
    }

    /// Adds a `key: value` line to the text report.
    pub fn record(&mut self, key: &str, value: impl Display) {
        self.records.push((key.to_string(), value.to_string()));
    }

    /// Records the main result and its terms.
    pub fn result(&mut self, value: impl Display) {
        self.labelled_result("result", value);
    }

    /// Records a result under `key`, appending its terms prefixed by the key.
    pub fn labelled_result(&mut self, key: &str, value: impl Display) {
        let text = value.to_string();
        let prefix = if key == "result" { String::new() } else { format!("{key}: ") };
        self.result_terms.extend(split_terms(&text).into_iter().map(|t| format!("{prefix}{t}")));
        self.records.push((key.to_string(), text));
    }

    pub fn check(&mut self, suite: &str, name: &str, cases: usize, passed: bool, witness: Option<String>) {
        self.checks.push(CheckRecord { suite: suite.to_string(), name: name.to_string(), cases, passed });
        if let Some(w) = witness {
            self.witnesses.push(format!("[{suite}] {name}: {w}"));
        }
    }

    pub fn suite(&mut self, r: &SuiteReport) {
        for c in &r.checks {
            self.check(&r.name, &c.name, c.cases, c.passed(), c.witness.clone());
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "config: {}", self.config).unwrap();
        writeln!(s, "command: {}", self.command).unwrap();
        for (k, v) in &self.records {
            writeln!(s, "{k}: {v}").unwrap();
        }
        for c in &self.checks {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            writeln!(s, "check: [{}] {} | cases: {} | {verdict}", c.suite, c.name, c.cases).unwrap();
        }
        for w in &self.witnesses {
            writeln!(s, "witness: {w}").unwrap();
        }
        if !self.checks.is_empty() {
            let failed = self.checks.iter().filter(|c| !c.passed).count();
            writeln!(s, "summary: {} checks, {failed} failed", self.checks.len()).unwrap();
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
