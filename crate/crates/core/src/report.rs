//! Outcome records produced by every identity check.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// First cell at which the two sides of an identity disagree.
///
/// For pair-level rule checks `k` carries the gap and `n` the smaller part;
/// boolean verdicts are encoded as 1 (admitted) and 0 (rejected).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub equation: String,
    pub k: i64,
    pub n: i64,
    pub lhs: i64,
    pub rhs: i64,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} k={} n={} lhs={} rhs={}",
            self.equation, self.k, self.n, self.lhs, self.rhs
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub parameters: BTreeMap<String, i64>,
    pub status: Status,
    /// Number of cells (or cases) compared.
    pub cases: u64,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub equations: BTreeMap<String, Status>,
    pub counterexample: Option<Counterexample>,
    /// Set when the check could not be evaluated (overflow, missing table).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }

    /// Sort key used to make suite output independent of execution order.
    pub fn sort_key(&self) -> (&str, Vec<(&str, i64)>) {
        (
            self.check_name.as_str(),
            self.parameters
                .iter()
                .map(|(k, v)| (k.as_str(), *v))
                .collect(),
        )
    }
}

/// Accumulates comparisons for one check and keeps the first mismatch.
#[derive(Debug)]
pub struct Checker {
    name: String,
    parameters: BTreeMap<String, i64>,
    cases: u64,
    equations: BTreeMap<String, Status>,
    first: Option<Counterexample>,
    error: Option<String>,
    started: Instant,
}

impl Checker {
    pub fn new(name: impl Into<String>) -> Self {
        Checker {
            name: name.into(),
            parameters: BTreeMap::new(),
            cases: 0,
            equations: BTreeMap::new(),
            first: None,
            error: None,
            started: Instant::now(),
        }
    }

    pub fn param(mut self, key: &str, value: i64) -> Self {
        self.parameters.insert(key.to_string(), value);
        self
    }

    /// Registers an equation so it shows up in the per-equation summary even
    /// when the window leaves it nothing to compare.
    pub fn declare(&mut self, equation: &str) {
        self.equations
            .entry(equation.to_string())
            .or_insert(Status::Pass);
    }

    pub fn add_cases(&mut self, n: u64) {
        self.cases += n;
    }

    pub fn compare(&mut self, equation: &str, k: i64, n: i64, lhs: i64, rhs: i64) -> bool {
        self.cases += 1;
        let ok = lhs == rhs;
        let slot = self
            .equations
            .entry(equation.to_string())
            .or_insert(Status::Pass);
        if !ok {
            *slot = Status::Fail;
            if self.first.is_none() {
                self.first = Some(Counterexample {
                    equation: equation.to_string(),
                    k,
                    n,
                    lhs,
                    rhs,
                });
            }
        }
        ok
    }

    pub fn record_error(&mut self, err: &Error) {
        if self.error.is_none() {
            self.error = Some(err.to_string());
        }
    }

    pub fn has_failure(&self) -> bool {
        self.first.is_some() || self.error.is_some()
    }

    pub fn finish(self) -> CheckReport {
        let status = if self.has_failure() {
            Status::Fail
        } else {
            Status::Pass
        };
        CheckReport {
            check_name: self.name,
            parameters: self.parameters,
            status,
            cases: self.cases,
            equations: self.equations,
            counterexample: self.first,
            error: self.error,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
        }
    }

    /// Runs `body`, folding any error it returns into the report.
    pub fn run<F>(mut self, body: F) -> CheckReport
    where
        F: FnOnce(&mut Checker) -> crate::Result<()>,
    {
        if let Err(e) = body(&mut self) {
            self.record_error(&e);
        }
        self.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_first_mismatch_only() {
        let mut c = Checker::new("demo").param("N", 3);
        c.compare("eq1", 0, 0, 1, 1);
        c.compare("eq1", 1, 4, 2, 3);
        c.compare("eq2", 2, 5, 7, 8);
        let r = c.finish();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.cases, 3);
        let cx = r.counterexample.unwrap();
        assert_eq!((cx.equation.as_str(), cx.k, cx.n), ("eq1", 1, 4));
        assert_eq!(r.equations["eq2"], Status::Fail);
    }

    #[test]
    fn error_marks_failure() {
        let r = Checker::new("x").run(|_| Err(Error::Overflow { context: "test" }));
        assert_eq!(r.status, Status::Fail);
        assert!(r.counterexample.is_none());
        assert!(r.error.unwrap().contains("overflow"));
    }

    #[test]
    fn declared_equations_default_to_pass() {
        let mut c = Checker::new("x");
        c.declare("dur1");
        let r = c.finish();
        assert!(r.passed());
        assert_eq!(r.equations["dur1"], Status::Pass);
    }
}
