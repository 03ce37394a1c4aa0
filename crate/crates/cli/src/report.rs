//! Check reports and their text and JSON renderings.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Kind {
    SymbolicIdentity,
    OracleAgreement,
    Dimension,
    Numeric,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub check_id: String,
    pub status: Status,
    pub kind: Kind,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma_verdict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub membership_verdict: Option<bool>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn new(check_id: impl Into<String>, kind: Kind, passed: bool, detail: impl Into<String>) -> Self {
        CheckReport {
            check_id: check_id.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            kind,
            detail: detail.into(),
            point: None,
            counterexample: None,
            lemma_verdict: None,
            membership_verdict: None,
            elapsed_ms: 0,
        }
    }

    pub fn skipped(check_id: impl Into<String>, kind: Kind, reason: impl Into<String>) -> Self {
        CheckReport {
            status: Status::Skipped,
            ..Self::new(check_id, kind, true, reason)
        }
    }

    pub fn with_point(mut self, point: impl Into<String>) -> Self {
        self.point = Some(point.into());
        self
    }

    /// Attached only when the check failed.
    pub fn with_counterexample(mut self, c: impl Into<String>) -> Self {
        if self.status == Status::Fail {
            self.counterexample = Some(c.into());
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    fn ensure_counterexample(&mut self) {
        if self.status == Status::Fail && self.counterexample.is_none() {
            self.counterexample = Some(self.point.clone().unwrap_or_else(|| self.detail.clone()));
        }
    }
}

/// Sorts by check id and fills in missing counterexamples.
pub fn finalize(mut reports: Vec<CheckReport>) -> Vec<CheckReport> {
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    for r in &mut reports {
        r.ensure_counterexample();
    }
    reports
}

pub fn render_json(reports: &[CheckReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

pub fn render_text(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        out.push_str(&format!("{status} {} {}", r.check_id, r.detail));
        if let Some(p) = &r.point {
            out.push_str(&format!(" at {p}"));
        }
        if let Some(c) = &r.counterexample {
            out.push_str(&format!(" counterexample: {c}"));
        }
        if r.elapsed_ms > 0 {
            out.push_str(&format!(" ({} ms)", r.elapsed_ms));
        }
        out.push('\n');
    }
    out
}
