//! Verification reports with full witness lists.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of one named law checked over many instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Number of instances evaluated.
    pub tested: usize,
    /// Every failing instance, rendered.
    pub witnesses: Vec<String>,
    /// Set when the law was checked on a restricted domain only.
    #[serde(default)]
    pub partial: bool,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// A named collection of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), checks: Vec::new() }
    }

    /// Starts a new check and returns its index.
    pub fn begin(&mut self, name: impl Into<String>) -> usize {
        self.checks.push(Check { name: name.into(), tested: 0, witnesses: Vec::new(), partial: false });
        self.checks.len() - 1
    }

    /// Records one instance of the check at `idx`.
    pub fn record(&mut self, idx: usize, ok: bool, witness: impl FnOnce() -> String) {
        let c = &mut self.checks[idx];
        c.tested += 1;
        if !ok {
            c.witnesses.push(witness());
        }
    }

    /// Shorthand for a single-instance check.
    pub fn single(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        let i = self.begin(name);
        self.record(i, ok, witness);
    }

    pub fn mark_partial(&mut self, idx: usize) {
        self.checks[idx].partial = true;
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// Checks that have at least one witness.
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Appends the checks of another report, prefixing their names.
    pub fn absorb(&mut self, other: Report) {
        for mut c in other.checks {
            c.name = format!("{}/{}", other.name, c.name);
            self.checks.push(c);
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.name, if self.passed() { "PASS" } else { "FAIL" })?;
        for c in &self.checks {
            let status = if c.passed() { "ok" } else { "FAIL" };
            let partial = if c.partial { " (partial)" } else { "" };
            writeln!(f, "  {:<40} {:>4} over {}{}", c.name, status, c.tested, partial)?;
            for w in c.witnesses.iter().take(5) {
                writeln!(f, "      witness: {}", w)?;
            }
            if c.witnesses.len() > 5 {
                writeln!(f, "      ... {} more", c.witnesses.len() - 5)?;
            }
        }
        Ok(())
    }
}
