//! Pass/fail records produced by the verification routines.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// Short description of the identity being checked.
    pub anchor: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    pub fn record(&mut self, name: impl Into<String>, anchor: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            anchor: anchor.into(),
            passed,
            detail: None,
        });
    }

    pub fn record_with(
        &mut self,
        name: impl Into<String>,
        anchor: impl Into<String>,
        passed: bool,
        detail: String,
    ) {
        self.checks.push(Check {
            name: name.into(),
            anchor: anchor.into(),
            passed,
            detail: Some(detail),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = self.checks.iter().filter(|c| c.passed).count();
        write!(
            f,
            "{}: {ok}/{} checks passed",
            self.suite,
            self.checks.len()
        )?;
        if let Some(c) = self.first_failure() {
            write!(f, "; first failure: {} ({})", c.name, c.anchor)?;
        }
        Ok(())
    }
}

/// `"1 case"`, `"n cases"`.
pub fn cases(count: usize) -> String {
    if count == 1 {
        "1 case".into()
    } else {
        format!("{count} cases")
    }
}
