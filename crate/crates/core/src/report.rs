use std::fmt;

use serde::Serialize;

/// The offending identity and basis indices of a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub identity: String,
    pub indices: Vec<usize>,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Pass/fail record for a group of checks; failures keep the first witness.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub subject: String,
    pub checks: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>) -> Self {
        CheckReport { subject: subject.into(), checks: Vec::new() }
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(CheckEntry { name: name.into(), passed: true, detail: None, witness: None });
    }

    pub fn pass_with(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(CheckEntry { name: name.into(), passed: true, detail: Some(detail.into()), witness: None });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: Witness) {
        self.checks.push(CheckEntry { name: name.into(), passed: false, detail: None, witness: Some(witness) });
    }

    pub fn fail_with(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(CheckEntry { name: name.into(), passed: false, detail: Some(detail.into()), witness: None });
    }

    /// Records the outcome of a check that produced an optional witness.
    pub fn record(&mut self, name: impl Into<String>, outcome: Option<Witness>) {
        match outcome {
            None => self.pass(name),
            Some(w) => self.fail(name, w),
        }
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&CheckEntry> {
        self.failures().next()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            write!(f, "  {mark} {}", c.name)?;
            if let Some(d) = &c.detail {
                write!(f, " ({d})")?;
            }
            if let Some(w) = &c.witness {
                write!(f, " at {} [{}]", w.identity, w.labels.join(", "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
