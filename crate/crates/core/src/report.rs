use std::fmt;

use serde::Serialize;

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Offending item for a failed check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(name: &str) -> Self {
        Check {
            name: name.to_string(),
            passed: true,
            detail: None,
        }
    }

    pub fn fail(name: &str, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed: false,
            detail: Some(detail.into()),
        }
    }

    /// Passes unless `first_failure` is `Some`.
    pub fn from_failure(name: &str, first_failure: Option<String>) -> Self {
        match first_failure {
            None => Check::pass(name),
            Some(d) => Check::fail(name, d),
        }
    }
}

/// A list of independent checks.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Whether the named check exists and passed.
    pub fn is_pass(&self, name: &str) -> bool {
        self.check(name).is_some_and(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match (&c.passed, &c.detail) {
                (true, _) => writeln!(f, "PASS {}", c.name)?,
                (false, Some(d)) => writeln!(f, "FAIL {}: {}", c.name, d)?,
                (false, None) => writeln!(f, "FAIL {}", c.name)?,
            }
        }
        Ok(())
    }
}
