//! Suite results and the JSON report.

use serde::Serialize;
use serde_json::Value;

/// Failures kept per suite; the count keeps going past this.
pub const MAX_RECORDED_FAILURES: usize = 50;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Failure {
    pub case: String,
    pub detail: String,
    pub replay: Value,
}

/// An approximate (floating) quantity, reported to 12 significant digits.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Approx {
    pub label: String,
    pub value: String,
    pub approximate: bool,
}

impl Approx {
    pub fn new(label: &str, value: f64) -> Self {
        Self { label: label.to_string(), value: format!("{value:.11e}"), approximate: true }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SuiteReport {
    pub name: String,
    pub anchor: String,
    pub cases: u64,
    pub passed: bool,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub approx: Vec<Approx>,
    pub millis: u64,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub models: usize,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

/// Case counter and failure sink for one suite run over one model.
#[derive(Debug, Default)]
pub struct Recorder {
    pub cases: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    pub approx: Vec<(String, f64)>,
}

impl Recorder {
    /// Counts one case; on `!ok` records a failure with lazily built detail
    /// and replay data.
    pub fn check(&mut self, ok: bool, case: impl FnOnce() -> String, replay: impl FnOnce() -> Value) -> bool {
        self.cases += 1;
        if !ok {
            self.fail(case(), replay());
        }
        ok
    }

    /// Counts one case whose outcome is a `Result` carrying a failure detail.
    pub fn check_result(&mut self, outcome: Result<(), String>, case: &str, replay: impl FnOnce() -> Value) -> bool {
        self.cases += 1;
        match outcome {
            Ok(()) => true,
            Err(detail) => {
                self.failure_count += 1;
                if self.failures.len() < MAX_RECORDED_FAILURES {
                    self.failures.push(Failure { case: case.to_string(), detail, replay: replay() });
                }
                false
            }
        }
    }

    fn fail(&mut self, case: String, replay: Value) {
        self.failure_count += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            let (case, detail) = match case.split_once(": ") {
                Some((c, d)) => (c.to_string(), d.to_string()),
                None => (case, String::new()),
            };
            self.failures.push(Failure { case, detail, replay });
        }
    }

    /// Tracks the largest value seen under `label`.
    pub fn observe_max(&mut self, label: &str, value: f64) {
        match self.approx.iter_mut().find(|(l, _)| l == label) {
            Some((_, v)) => *v = v.max(value),
            None => self.approx.push((label.to_string(), value)),
        }
    }

    pub fn merge(&mut self, other: Recorder) {
        self.cases += other.cases;
        self.failure_count += other.failure_count;
        let room = MAX_RECORDED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        for (label, value) in other.approx {
            self.observe_max(&label, value);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn recorder_counts_and_caps() {
        let mut rec = Recorder::default();
        for i in 0..(MAX_RECORDED_FAILURES + 5) {
            rec.check(i % 2 == 0, || format!("case {i}: odd"), || json!({ "i": i }));
        }
        assert_eq!(rec.cases as usize, MAX_RECORDED_FAILURES + 5);
        assert_eq!(rec.failure_count as usize, (MAX_RECORDED_FAILURES + 5) / 2);
        assert_eq!(rec.failures[0].case, "case 1");
        assert_eq!(rec.failures[0].detail, "odd");
        let mut total = Recorder::default();
        total.merge(rec);
        total.observe_max("gap", 0.5);
        total.observe_max("gap", 0.25);
        assert_eq!(total.approx, vec![("gap".to_string(), 0.5)]);
    }

    #[test]
    fn approx_has_twelve_significant_digits() {
        assert_eq!(Approx::new("x", 1.0 / 3.0).value, "3.33333333333e-1");
    }
}
