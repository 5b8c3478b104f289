//! Verification reports shared by the verifier and the three-pile cross-check.

use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A single violated case. `inputs` are game expressions that re-parse to
/// the offending forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub inputs: Vec<String>,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub mode: Mode,
    /// Cases in which the claim's hypothesis held and the claim was tested.
    pub cases: u64,
    pub verdict: Verdict,
    pub failures: Vec<Failure>,
    /// Cases left out of the claim on purpose, listed so they stay visible.
    pub excluded: Vec<Vec<String>>,
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Accumulates cases for one report.
#[derive(Debug)]
pub struct ReportBuilder {
    theorem: String,
    mode: Mode,
    seed: Option<u64>,
    cases: u64,
    failures: Vec<Failure>,
    excluded: Vec<Vec<String>>,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(theorem: impl Into<String>, mode: Mode, seed: Option<u64>) -> Self {
        ReportBuilder {
            theorem: theorem.into(),
            mode,
            seed,
            cases: 0,
            failures: Vec::new(),
            excluded: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn case(&mut self) {
        self.cases += 1;
    }

    pub fn fail(&mut self, inputs: Vec<String>, expected: impl Into<String>, actual: impl Into<String>) {
        self.failures.push(Failure { inputs, expected: expected.into(), actual: actual.into() });
    }

    pub fn exclude(&mut self, inputs: Vec<String>) {
        self.excluded.push(inputs);
    }

    pub fn finish(self) -> VerificationReport {
        let verdict = if self.failures.is_empty() { Verdict::Pass } else { Verdict::Fail };
        VerificationReport {
            theorem: self.theorem,
            mode: self.mode,
            cases: self.cases,
            verdict,
            failures: self.failures,
            excluded: self.excluded,
            seed: self.seed,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
        }
    }
}
