//! Line-oriented check reports: `<code> <name> PASS|FAIL|NOTE[: detail]`.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Informational; never fails a report.
    Note,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Note => "NOTE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub code: String,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    checks: Vec<Check>,
}

/// Most witnesses printed per failing check.
const WITNESS_LIMIT: usize = 3;

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, code: &str, name: &str, status: Status, detail: impl Into<String>) {
        self.checks.push(Check {
            code: code.to_string(),
            name: name.to_string(),
            status,
            detail: detail.into(),
        });
    }

    /// PASS with `summary` when `failures` is empty, FAIL listing the first
    /// few failures otherwise.
    pub fn push_outcome(&mut self, code: &str, name: &str, summary: impl Into<String>, failures: &[String]) {
        if failures.is_empty() {
            self.push(code, name, Status::Pass, summary);
        } else {
            let mut detail = failures[..failures.len().min(WITNESS_LIMIT)].join("; ");
            if failures.len() > WITNESS_LIMIT {
                detail.push_str(&format!(" (+{} more)", failures.len() - WITNESS_LIMIT));
            }
            self.push(code, name, Status::Fail, detail);
        }
    }

    pub fn append(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn get(&self, code: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.code == code)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.code, self.name, self.status.as_str())?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
