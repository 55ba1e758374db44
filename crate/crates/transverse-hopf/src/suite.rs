//! Reports produced by the randomized identity suites.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Outcome of one identity checked on many cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// Description of the first failing case.
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: &str) -> Self {
        Check { name: String::from(name), cases: 0, failures: 0, witness: None }
    }

    /// Records one case; the witness is rendered only for the first failure.
    pub fn record(&mut self, ok: bool, witness: &dyn Fn() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// A named list of checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(name: &str) -> Self {
        SuiteReport { name: String::from(name), checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// Records a single-case check.
    pub fn single(&mut self, name: &str, ok: bool, witness: &dyn Fn() -> String) {
        let mut c = Check::new(name);
        c.record(ok, witness);
        self.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn extend(&mut self, other: SuiteReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite: {}", self.name)?;
        for c in &self.checks {
            let verdict = if c.passed() { "pass" } else { "FAIL" };
            writeln!(f, "check: {} | cases: {} | {}", c.name, c.cases, verdict)?;
            if let Some(w) = &c.witness {
                writeln!(f, "witness: {w}")?;
            }
        }
        Ok(())
    }
}
