//! Machine and human renderings of scenario results.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use sugeno_core::integral::Method;
use sugeno_core::{Evidence, Verdict};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    /// A computation without a claim to decide, such as a list of integrals.
    Success,
    Violated,
    /// A search stopped at its budget without a witness.
    Inconclusive,
    HypothesisFailed,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Holds | Status::Success => 0,
            Status::Violated => 1,
            Status::Inconclusive | Status::HypothesisFailed | Status::Error => 2,
        }
    }

    pub fn of(verdict: &Verdict) -> Status {
        match verdict {
            Verdict::HoldsOnGrid { .. } => Status::Holds,
            Verdict::Violated { .. } => Status::Violated,
            Verdict::HypothesisFailed { .. } => Status::HypothesisFailed,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Success => "success",
            Status::Violated => "violated",
            Status::Inconclusive => "inconclusive",
            Status::HypothesisFailed => "hypothesis failed",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub report_version: u32,
    pub scenario: String,
    pub kind: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub status: Status,
    pub exit_code: i32,
    /// Evidence class: `exact`, `grid(step)`, `bisection(tol)` or
    /// `random-trials(n, seed)`; several are joined with `; `.
    pub evidence: String,
    pub summary: String,
    pub result: Value,
    /// Extra lines for the text rendering.
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(scenario: &str, kind: &str, description: &str) -> Report {
        Report {
            report_version: REPORT_VERSION,
            scenario: scenario.to_string(),
            kind: kind.to_string(),
            description: description.to_string(),
            status: Status::Success,
            exit_code: 0,
            evidence: "exact".to_string(),
            summary: String::new(),
            result: Value::Null,
            lines: Vec::new(),
        }
    }

    pub fn with_status(mut self, status: Status) -> Report {
        self.status = status;
        self.exit_code = status.exit_code();
        self
    }

    pub fn error(scenario: &str, kind: &str, description: &str, message: String) -> Report {
        let mut r = Report::new(scenario, kind, description).with_status(Status::Error);
        r.evidence = "none".to_string();
        r.summary = message;
        r
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} [{}]: {}",
            self.scenario,
            self.kind,
            self.status.label()
        );
        if !self.description.is_empty() {
            let _ = writeln!(out, "  {}", self.description);
        }
        let _ = writeln!(out, "  evidence: {}", self.evidence);
        if !self.summary.is_empty() {
            let _ = writeln!(out, "  {}", self.summary);
        }
        for line in &self.lines {
            let _ = writeln!(out, "    {line}");
        }
        out
    }
}

pub fn method_evidence(method: &Method) -> String {
    match method {
        Method::ExactCandidateSet => Evidence::Exact.to_string(),
        Method::Grid { step } => format!("grid({step})"),
        Method::Bisection { tol } => Evidence::Bisection { tol: *tol }.to_string(),
    }
}

pub fn verdict_evidence(verdict: &Verdict) -> Option<String> {
    match verdict {
        Verdict::HoldsOnGrid { evidence } | Verdict::Violated { evidence, .. } => {
            Some(evidence.to_string())
        }
        Verdict::HypothesisFailed { .. } => None,
    }
}

/// Distinct entries in first-seen order, joined.
pub fn join_evidence(items: impl IntoIterator<Item = String>) -> String {
    let mut seen: Vec<String> = Vec::new();
    for item in items {
        if !seen.contains(&item) {
            seen.push(item);
        }
    }
    if seen.is_empty() {
        "exact".to_string()
    } else {
        seen.join("; ")
    }
}

/// One-line description of a verdict.
pub fn describe(verdict: &Verdict) -> String {
    match verdict {
        Verdict::HoldsOnGrid { evidence } => format!("holds ({evidence})"),
        Verdict::Violated {
            witness, lhs, rhs, ..
        } => format!(
            "violated at {} with lhs = {lhs} < rhs = {rhs}",
            point(witness)
        ),
        Verdict::HypothesisFailed { detail, value } => match value {
            Some(v) => format!("hypothesis failed at {v}: {detail}"),
            None => format!("hypothesis failed: {detail}"),
        },
    }
}

pub fn point(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Serializes library output; these types contain only finite-or-infinite
/// numbers, strings and containers, so this cannot fail.
pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}
