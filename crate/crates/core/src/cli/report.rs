//! Machine-readable and human-readable command reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::finset::{Elem, FinMap};
use crate::report::{Check, LawReport, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub paper_anchor: String,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub scope: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl From<&Check> for CheckEntry {
    fn from(c: &Check) -> Self {
        let (verdict, witness, reason) = match &c.verdict {
            Verdict::Pass => ("pass", None, None),
            Verdict::Fail { witness } => ("fail", Some(witness.clone()), None),
            Verdict::Skipped { reason } => ("skipped", None, Some(reason.clone())),
        };
        let scope = if c.scope.is_empty() && witness.is_none() {
            vec!["all test objects".to_string()]
        } else {
            c.scope.clone()
        };
        CheckEntry {
            name: c.name.clone(),
            paper_anchor: c.anchor.clone(),
            verdict,
            scope,
            witness,
            reason,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Artifact {
    pub name: String,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub checks: Vec<CheckEntry>,
    pub artifacts: Vec<Artifact>,
}

fn number(x: Elem) -> Value {
    u64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            inputs: BTreeMap::new(),
            checks: Vec::new(),
            artifacts: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.into(), value.to_string());
    }

    pub fn check(&mut self, c: &Check) {
        self.checks.push(c.into());
    }

    pub fn law_report(&mut self, r: &LawReport) {
        for c in &r.checks {
            self.check(c);
        }
    }

    pub fn artifact(&mut self, name: impl Into<String>, value: impl Into<Value>) {
        self.artifacts.push(Artifact {
            name: name.into(),
            value: value.into(),
        });
    }

    pub fn map_artifact(&mut self, name: impl Into<String>, f: &FinMap) {
        let table: Vec<Value> = f.table().iter().map(|&x| number(x)).collect();
        self.artifact(
            name,
            serde_json::json!({ "dom": number(f.dom().size()), "cod": number(f.cod().size()), "table": table }),
        );
    }

    pub fn size_artifact(&mut self, name: impl Into<String>, n: Elem) {
        self.artifact(name, number(n));
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.verdict == "fail")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  {k}: {v}");
        }
        for c in &self.checks {
            let tail = match (&c.witness, &c.reason) {
                (Some(w), _) => format!(" {w}"),
                (None, Some(r)) => format!(" ({r})"),
                _ => String::new(),
            };
            let _ = writeln!(out, "{:<7} {} [{}]{tail}", c.verdict, c.name, c.scope.join(", "));
        }
        for a in &self.artifacts {
            let _ = writeln!(out, "{} = {}", a.name, a.value);
        }
        let passed = self.checks.iter().filter(|c| c.verdict == "pass").count();
        let failed = self.checks.iter().filter(|c| c.verdict == "fail").count();
        let _ = writeln!(out, "{passed} passed, {failed} failed, {} skipped", self.checks.len() - passed - failed);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_carry_scope_or_witness() {
        let mut r = Report::new("demo");
        r.check(&Check::new("a", "x", vec![], Verdict::Pass));
        r.check(&Check::new(
            "b",
            "x",
            vec!["A=1".into()],
            Verdict::Fail {
                witness: Witness::note("boom"),
            },
        ));
        assert_eq!(r.checks[0].scope, vec!["all test objects"]);
        assert!(r.checks[1].witness.is_some());
        assert!(r.failed());
        let json = r.to_json();
        assert!(json.contains("\"paper_anchor\": \"x\""));
        assert_eq!(json, r.clone().to_json());
    }
}
