//! Verdicts produced by the axiom checkers.

use std::fmt;

use serde::Serialize;

/// Verdict for one generator tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub tuple: Vec<String>,
    pub passed: bool,
    /// First nonzero residual, printed, when the tuple fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub axiom: String,
    pub findings: Vec<Finding>,
}

impl CheckReport {
    pub fn new(axiom: impl Into<String>) -> Self {
        CheckReport {
            axiom: axiom.into(),
            findings: Vec::new(),
        }
    }

    pub fn push(&mut self, tuple: Vec<String>, witness: Option<String>) {
        self.findings.push(Finding {
            tuple,
            passed: witness.is_none(),
            witness,
        });
    }

    pub fn passed(&self) -> bool {
        self.findings.iter().all(|f| f.passed)
    }

    pub fn first_failure(&self) -> Option<&Finding> {
        self.findings.iter().find(|f| !f.passed)
    }

    pub fn failures(&self) -> usize {
        self.findings.iter().filter(|f| !f.passed).count()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for finding in &self.findings {
            write!(
                f,
                "{} ({}): {}",
                self.axiom,
                finding.tuple.join(","),
                if finding.passed { "pass" } else { "FAIL" }
            )?;
            if let Some(w) = &finding.witness {
                write!(f, "  witness: {w}")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "{}: {} ({} tuples, {} failing)",
            self.axiom,
            if self.passed() { "PASS" } else { "FAIL" },
            self.findings.len(),
            self.failures()
        )
    }
}
