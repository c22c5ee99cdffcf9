//! Structured output shared by every verification routine.

use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    pub status: Status,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            tool: "ldp".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.into(),
            checks: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.summary.total += 1;
        match record.status {
            Status::Pass => self.summary.pass += 1,
            Status::Fail => self.summary.fail += 1,
            Status::Skip => self.summary.skip += 1,
        }
        self.checks.push(record);
    }

    /// Records a check that passes iff `expected == actual`.
    pub fn compare(
        &mut self,
        id: impl Into<String>,
        inputs: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
    ) -> bool {
        let (expected, actual) = (expected.into(), actual.into());
        let ok = expected == actual;
        self.record(id, inputs, expected, actual, ok);
        ok
    }

    pub fn record(
        &mut self,
        id: impl Into<String>,
        inputs: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
        ok: bool,
    ) {
        self.push(CheckRecord {
            id: id.into(),
            inputs: inputs.into(),
            expected: expected.into(),
            actual: actual.into(),
            status: if ok { Status::Pass } else { Status::Fail },
        });
    }

    pub fn skip(&mut self, id: impl Into<String>, inputs: impl Into<String>, reason: impl Into<String>) {
        self.push(CheckRecord {
            id: id.into(),
            inputs: inputs.into(),
            expected: String::new(),
            actual: reason.into(),
            status: Status::Skip,
        });
    }

    /// Appends another report's checks, prefixing their ids.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.id = format!("{prefix}/{}", c.id);
            self.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}: {}", self.tool, self.version, self.command);
        for c in &self.checks {
            let _ = write!(out, "[{}] {}", c.status.label(), c.id);
            if !c.inputs.is_empty() {
                let _ = write!(out, " ({})", c.inputs);
            }
            let _ = writeln!(out, ": expected {}, got {}", show(&c.expected), show(&c.actual));
        }
        let s = &self.summary;
        let _ = writeln!(out, "summary: {} checks, {} pass, {} fail, {} skip", s.total, s.pass, s.fail, s.skip);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn show(s: &str) -> &str {
    if s.is_empty() {
        "-"
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_tracks_statuses() {
        let mut r = Report::new("test");
        assert!(r.compare("a", "", "1/2", "1/2"));
        assert!(!r.compare("b", "x", "1/2", "1/3"));
        r.skip("c", "", "not applicable");
        assert_eq!(r.summary, Summary { total: 3, pass: 1, fail: 1, skip: 1 });
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn text_and_json_are_deterministic() {
        let mut r = Report::new("graph [3]");
        r.compare("gap", "[3]", "2/3", "2/3");
        let text = r.render_text();
        assert!(text.contains("[PASS] gap ([3]): expected 2/3, got 2/3"));
        assert_eq!(text, r.clone().render_text());
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["checks"][0]["status"], "pass");
        assert_eq!(json["summary"]["pass"], 1);
    }

    #[test]
    fn absorb_prefixes_ids() {
        let mut inner = Report::new("inner");
        inner.compare("x", "", "1", "2");
        let mut outer = Report::new("outer");
        outer.absorb("sub", inner);
        assert_eq!(outer.checks[0].id, "sub/x");
        assert_eq!(outer.summary.fail, 1);
    }
}
