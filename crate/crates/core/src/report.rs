//! Check reports with exact counterexamples.
//!
//! A report is an ordered list of named checks. A failing check always
//! carries the first offending index tuple (in lexicographic order) with
//! the value found and the value required, so failures are reproducible
//! by hand.

use serde::{Deserialize, Serialize};

use crate::scalar::ExactScalar;

/// The first failing index tuple of a check: the component found (`lhs`)
/// and the value it was required to equal (`rhs`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub indices: Vec<u8>,
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
}

/// One named check; `counterexample` is present exactly when the check failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
}

impl CheckItem {
    pub fn pass(name: impl Into<String>) -> Self {
        Self { name: name.into(), passed: true, counterexample: None }
    }

    pub fn fail(name: impl Into<String>, counterexample: Counterexample) -> Self {
        Self { name: name.into(), passed: false, counterexample: Some(counterexample) }
    }

    /// A failing check that has no meaningful index tuple (for example a
    /// wrong rank); the expectation is encoded in the name instead.
    pub fn fail_plain(name: impl Into<String>) -> Self {
        Self { name: name.into(), passed: false, counterexample: None }
    }

    pub fn from_outcome(name: impl Into<String>, counterexample: Option<Counterexample>) -> Self {
        match counterexample {
            None => Self::pass(name),
            Some(ce) => Self::fail(name, ce),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub items: Vec<CheckItem>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.items.extend(other.items);
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn passed_count(&self) -> usize {
        self.items.iter().filter(|i| i.passed).count()
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.items.iter().find(|i| !i.passed)
    }

    pub fn summary(&self) -> String {
        format!("{}/{} checks passed", self.passed_count(), self.items.len())
    }

    /// Plain-text rendering, one line per item plus a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            out.push_str(&render_item_text(item));
            out.push('\n');
        }
        out.push_str(&self.summary());
        out.push('\n');
        out
    }

    /// Markdown table rendering.
    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| check | status | counterexample |\n|---|---|---|\n");
        for item in &self.items {
            let ce = match &item.counterexample {
                Some(c) => format!(
                    "at {:?}: found `{}`, required `{}`",
                    c.indices, c.lhs, c.rhs
                ),
                None => String::new(),
            };
            out.push_str(&format!(
                "| {} | {} | {} |\n",
                item.name,
                if item.passed { "pass" } else { "FAIL" },
                ce
            ));
        }
        out.push_str(&format!("\n{}\n", self.summary()));
        out
    }

    /// LaTeX tabular rendering.
    pub fn to_latex(&self) -> String {
        let mut out = String::from("\\begin{tabular}{lll}\n");
        out.push_str("check & status & counterexample \\\\\n\\hline\n");
        for item in &self.items {
            let ce = match &item.counterexample {
                Some(c) => format!(
                    "at {:?}: found ${}$, required ${}$",
                    c.indices, c.lhs, c.rhs
                ),
                None => String::new(),
            };
            out.push_str(&format!(
                "{} & {} & {} \\\\\n",
                escape_latex(&item.name),
                if item.passed { "pass" } else { "FAIL" },
                escape_latex(&ce)
            ));
        }
        out.push_str("\\end{tabular}\n");
        out
    }
}

fn render_item_text(item: &CheckItem) -> String {
    match (&item.passed, &item.counterexample) {
        (true, _) => format!("PASS {}", item.name),
        (false, Some(c)) => format!(
            "FAIL {}  at {:?}: found {}, required {}",
            item.name, c.indices, c.lhs, c.rhs
        ),
        (false, None) => format!("FAIL {}", item.name),
    }
}

fn escape_latex(s: &str) -> String {
    s.replace('\\', "\\textbackslash{}")
        .replace('&', "\\&")
        .replace('#', "\\#")
        .replace('_', "\\_")
        .replace('%', "\\%")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_schema_shape() {
        let mut report = VerificationReport::new();
        report.push(CheckItem::pass("alpha"));
        report.push(CheckItem::fail(
            "beta",
            Counterexample {
                indices: vec![1, 0],
                lhs: ExactScalar::from_int(1),
                rhs: ExactScalar::from_int(-1),
            },
        ));
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["items"][0], serde_json::json!({"name": "alpha", "passed": true}));
        assert_eq!(json["items"][1]["counterexample"]["indices"], serde_json::json!([1, 0]));
        assert_eq!(json["items"][1]["counterexample"]["lhs"], serde_json::json!("1"));
        assert!(!report.passed());
        assert_eq!(report.summary(), "1/2 checks passed");
        let back: VerificationReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, report);
    }
}
