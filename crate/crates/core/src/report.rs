//! Pass/fail reports shared by the verifiers and the command line.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub pass: bool,
    /// Number of cases examined.
    pub cases: u64,
    pub millis: u64,
    /// Witness on success, self-contained counterexample on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Report>,
}

impl Report {
    pub fn pass(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            pass: true,
            cases: 0,
            millis: 0,
            detail: None,
            checks: Vec::new(),
        }
    }

    pub fn fail(check: impl Into<String>, detail: Value) -> Self {
        Report {
            pass: false,
            detail: Some(detail),
            ..Report::pass(check)
        }
    }

    pub fn verdict(check: impl Into<String>, pass: bool) -> Self {
        Report {
            pass,
            ..Report::pass(check)
        }
    }

    /// A report whose verdict is the conjunction of its children.
    pub fn composite(check: impl Into<String>, checks: Vec<Report>) -> Self {
        Report {
            pass: checks.iter().all(|c| c.pass),
            cases: checks.iter().map(|c| c.cases).sum(),
            checks,
            ..Report::pass(check)
        }
    }

    pub fn with_cases(mut self, cases: u64) -> Self {
        self.cases = cases;
        self
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }

    /// Runs `f` and records its wall time.
    pub fn timed(f: impl FnOnce() -> Report) -> Report {
        let start = Instant::now();
        let mut r = f();
        r.millis = start.elapsed().as_millis() as u64;
        r
    }

    pub fn find(&self, check: &str) -> Option<&Report> {
        if self.check == check {
            return Some(self);
        }
        self.checks.iter().find_map(|c| c.find(check))
    }

    /// Sorts children by name and zeroes timings, recursively, so that the
    /// serialized form is reproducible.
    pub fn normalized(mut self, keep_timing: bool) -> Report {
        if !keep_timing {
            self.millis = 0;
        }
        self.checks = self
            .checks
            .into_iter()
            .map(|c| c.normalized(keep_timing))
            .collect();
        self.checks.sort_by(|a, b| a.check.cmp(&b.check));
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn composite_verdict() {
        let r = Report::composite(
            "all",
            vec![
                Report::pass("b").with_cases(2),
                Report::fail("a", json!({"x": 1})),
            ],
        );
        assert!(!r.pass);
        assert_eq!(r.cases, 2);
        let r = r.normalized(false);
        assert_eq!(r.checks[0].check, "a");
        assert_eq!(r.find("b").unwrap().cases, 2);
    }
}
