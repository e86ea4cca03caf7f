//! Verdict records and the machine report format. All numeric payloads are
//! exact integers; maps are ordered so that a fixed seed and scenario set
//! produce byte-identical output. Wall-clock timings are kept out of the
//! machine report by default so that determinism holds at the byte level;
//! they can be opted in for profiling runs.

use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl std::fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerdictKind::Pass => write!(f, "PASS"),
            VerdictKind::Fail => write!(f, "FAIL"),
            VerdictKind::Inconclusive => write!(f, "INCONCLUSIVE"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub id: String,
    pub pipeline: String,
    pub verdict: VerdictKind,
    pub seed: u64,
    pub quantities: BTreeMap<String, i64>,
    pub vectors: BTreeMap<String, Vec<i64>>,
    pub notes: Vec<String>,
    /// Replayable failure data: basis rows of witness subspaces and the
    /// like, rendered as text.
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl VerdictReport {
    pub fn new(id: &str, pipeline: &str, seed: u64) -> VerdictReport {
        VerdictReport {
            id: id.to_string(),
            pipeline: pipeline.to_string(),
            verdict: VerdictKind::Inconclusive,
            seed,
            quantities: BTreeMap::new(),
            vectors: BTreeMap::new(),
            notes: Vec::new(),
            witnesses: Vec::new(),
            wall_ms: None,
        }
    }

    pub fn set_q(&mut self, key: &str, value: i64) {
        self.quantities.insert(key.to_string(), value);
    }

    pub fn set_vec(&mut self, key: &str, value: Vec<i64>) {
        self.vectors.insert(key.to_string(), value);
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == VerdictKind::Pass
    }

    /// One human-readable summary line.
    pub fn summary_line(&self) -> String {
        let mut parts = Vec::new();
        for (k, v) in &self.quantities {
            parts.push(format!("{k}={v}"));
        }
        let notes = if self.notes.is_empty() {
            String::new()
        } else {
            format!("  [{}]", self.notes.join("; "))
        };
        format!("{:<12} {:<40} {}{}", self.verdict.to_string(), self.id, parts.join(" "), notes)
    }
}

/// The full machine report for a run: scenario reports sorted by id.
#[derive(Debug, Serialize)]
pub struct MachineReport {
    pub suite: String,
    pub seed: u64,
    pub reports: Vec<VerdictReport>,
}

impl MachineReport {
    pub fn new(suite: &str, seed: u64, mut reports: Vec<VerdictReport>) -> MachineReport {
        reports.sort_by(|a, b| a.id.cmp(&b.id));
        MachineReport { suite: suite.to_string(), seed, reports }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Exit-code contract: 0 all PASS, 1 any FAIL, 2 any INCONCLUSIVE.
    pub fn exit_code(&self) -> i32 {
        if self.reports.iter().any(|r| r.verdict == VerdictKind::Inconclusive) {
            if self.reports.iter().any(|r| r.verdict == VerdictKind::Fail) {
                return 1;
            }
            return 2;
        }
        if self.reports.iter().any(|r| r.verdict == VerdictKind::Fail) {
            return 1;
        }
        0
    }
}
