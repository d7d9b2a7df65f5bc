//! Check and suite result types shared by the verification machinery.
//!
//! A failing check is data, not an error: it carries the first failing
//! index and a witness string (the offending values in canonical text
//! form) so reports can be serialized and diffed.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// One named check, possibly ranging over an index `n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    /// Inclusive index range the check ran over, when applicable.
    pub n_range: Option<(i64, i64)>,
    /// First index at which the check failed.
    pub first_failure: Option<i64>,
    /// Counterexample payload in canonical text form.
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: CheckStatus::Pass,
            n_range: None,
            first_failure: None,
            witness: None,
        }
    }

    pub fn pass_range(name: impl Into<String>, lo: i64, hi: i64) -> Check {
        Check {
            n_range: Some((lo, hi)),
            ..Check::pass(name)
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: CheckStatus::Fail,
            n_range: None,
            first_failure: None,
            witness: Some(witness.into()),
        }
    }

    pub fn fail_at(
        name: impl Into<String>,
        lo: i64,
        hi: i64,
        n: i64,
        witness: impl Into<String>,
    ) -> Check {
        Check {
            name: name.into(),
            status: CheckStatus::Fail,
            n_range: Some((lo, hi)),
            first_failure: Some(n),
            witness: Some(witness.into()),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Aggregate of named checks; passes iff every check passes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuiteResult {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteResult {
    pub fn new(suite: impl Into<String>) -> SuiteResult {
        SuiteResult {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(Check::is_pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}", self.suite)?;
        for c in &self.checks {
            let status = if c.is_pass() { "pass" } else { "FAIL" };
            write!(f, "  {status}  {}", c.name)?;
            if let Some((lo, hi)) = c.n_range {
                write!(f, "  (n = {lo}..={hi})")?;
            }
            if let Some(n) = c.first_failure {
                write!(f, "  first failure at n = {n}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "  => {}", if self.pass() { "PASS" } else { "FAIL" })
    }
}

/// Outcome of a residual-style verification over `n = lo..=hi`: either
/// every residual vanished, or the first offender is recorded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResidualReport {
    pub lo: i64,
    pub hi: i64,
    pub first_failure: Option<(i64, String)>,
}

impl ResidualReport {
    pub fn is_pass(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn to_check(&self, name: impl Into<String>) -> Check {
        match &self.first_failure {
            None => Check::pass_range(name, self.lo, self.hi),
            Some((n, w)) => Check::fail_at(name, self.lo, self.hi, *n, w.clone()),
        }
    }
}
