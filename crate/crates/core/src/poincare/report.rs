use std::fmt;

use serde::Serialize;

/// Failures kept per report; the rest are only counted.
const MAX_LISTED: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub rule: String,
    pub detail: String,
}

/// Outcome of a checker: how many cases were examined and which failed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub checked: usize,
    pub failures: Vec<Failure>,
    /// Failures beyond the listing limit.
    pub unlisted: usize,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report { check: check.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.unlisted == 0
    }

    pub fn failure_count(&self) -> usize {
        self.failures.len() + self.unlisted
    }

    pub fn has_rule(&self, rule: &str) -> bool {
        self.failures.iter().any(|f| f.rule == rule)
    }

    /// Records one case, failing it with `detail` when `ok` is false.
    pub(crate) fn expect(&mut self, ok: bool, rule: &str, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(rule, detail());
        }
    }

    pub(crate) fn fail(&mut self, rule: &str, detail: String) {
        if self.failures.len() < MAX_LISTED {
            self.failures.push(Failure { rule: rule.to_string(), detail });
        } else {
            self.unlisted += 1;
        }
    }

    /// Merges another report's counts and failures into this one.
    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        for f in other.failures {
            self.fail(&f.rule, f.detail);
        }
        self.unlisted += other.unlisted;
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "{}: pass ({} checks)", self.check, self.checked);
        }
        write!(f, "{}: FAIL ({} of {} checks)", self.check, self.failure_count(), self.checked)?;
        for x in &self.failures {
            write!(f, "\n  [{}] {}", x.rule, x.detail)?;
        }
        if self.unlisted > 0 {
            write!(f, "\n  ... {} more", self.unlisted)?;
        }
        Ok(())
    }
}
