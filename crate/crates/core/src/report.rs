//! Outcomes of exhaustive checks.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finset::{Arrow, Budget, Elem};

/// A counterexample: the element where the two legs of a diagram disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub element: String,
    pub index: String,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(index: Elem, element: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        Witness {
            element: element.into(),
            index: index.to_string(),
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }

    pub fn note(detail: impl Into<String>) -> Self {
        Witness {
            element: detail.into(),
            index: String::new(),
            lhs: String::new(),
            rhs: String::new(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index.is_empty() {
            write!(f, "{}", self.element)
        } else {
            write!(f, "at {} (#{}): {} vs {}", self.element, self.index, self.lhs, self.rhs)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail { witness: Witness },
    Skipped { reason: String },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self, Verdict::Skipped { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fail { witness } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(rename = "paper_anchor")]
    pub anchor: String,
    pub verdict: Verdict,
    pub scope: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, scope: Vec<String>, verdict: Verdict) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            verdict,
            scope,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict.is_pass()
    }

    pub fn fails(&self) -> bool {
        self.verdict.is_fail()
    }

    /// Turns a construction error into a skipped (budget) or failed entry.
    pub fn from_error(name: impl Into<String>, anchor: impl Into<String>, scope: Vec<String>, err: Error) -> Self {
        let verdict = if err.is_budget() {
            Verdict::Skipped { reason: err.to_string() }
        } else {
            Verdict::Fail {
                witness: Witness::note(err.to_string()),
            }
        };
        Check::new(name, anchor, scope, verdict)
    }

    pub fn prefixed(mut self, prefix: &str) -> Self {
        self.name = format!("{prefix}{}", self.name);
        self
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scope = self.scope.join(", ");
        match &self.verdict {
            Verdict::Pass => write!(f, "pass  {} [{scope}]", self.name),
            Verdict::Fail { witness } => write!(f, "FAIL  {} [{scope}] {witness}", self.name),
            Verdict::Skipped { reason } => write!(f, "skip  {} [{scope}] {reason}", self.name),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl LawReport {
    pub fn new(subject: impl Into<String>) -> Self {
        LawReport {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: LawReport) {
        self.checks.extend(other.checks);
    }

    /// No check failed. Skipped entries do not count against the report.
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(Check::fails)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.fails())
    }

    pub fn skipped(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.verdict.is_skipped())
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn count_passed(&self) -> usize {
        self.checks.iter().filter(|c| c.holds()).count()
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        Ok(())
    }
}

/// First element of the shared domain where `lhs` and `rhs` disagree.
pub fn first_disagreement(lhs: &Arrow, rhs: &Arrow, budget: Budget) -> Result<Option<Elem>> {
    if lhs.dom() != rhs.dom() {
        return Err(Error::type_mismatch("domain", format!("{} vs {}", lhs.dom().size(), rhs.dom().size())));
    }
    if lhs.cod() != rhs.cod() {
        return Err(Error::type_mismatch("codomain", format!("{} vs {}", lhs.cod().size(), rhs.cod().size())));
    }
    let n = budget.admit("diagram domain", lhs.dom().size())?;
    Ok((0..n as Elem).find(|&x| lhs.apply(x) != rhs.apply(x)))
}

/// Compares the two legs of a diagram pointwise.
pub fn compare_arrows(lhs: &Arrow, rhs: &Arrow, budget: Budget) -> Result<Verdict> {
    Ok(match first_disagreement(lhs, rhs, budget)? {
        None => Verdict::Pass,
        Some(x) => Verdict::Fail {
            witness: Witness::new(x, lhs.dom().label(x), lhs.cod().label(lhs.apply(x)), rhs.cod().label(rhs.apply(x))),
        },
    })
}

/// Builds a check whose legs may fail to construct; budget failures become
/// skipped entries.
pub fn diagram_check(name: &str, anchor: &str, scope: Vec<String>, budget: Budget, legs: impl FnOnce() -> Result<(Arrow, Arrow)>) -> Check {
    match legs().and_then(|(l, r)| compare_arrows(&l, &r, budget)) {
        Ok(v) => Check::new(name, anchor, scope, v),
        Err(e) => Check::from_error(name, anchor, scope, e),
    }
}
