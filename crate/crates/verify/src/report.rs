use std::collections::BTreeMap;
use std::time::Instant;

use dcx_core::VertexId;
use dcx_surface::ComplexBundle;
use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Outcome of one check.
///
/// `Verified` is reserved for restrictions of universally true statements
/// whose witnesses provably lie inside the truncation; bounded scans of the
/// other direction report `NoCounterexampleWithinBound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    NoCounterexampleWithinBound,
    Counterexample,
    Skipped,
}

/// A replayable pair (or tuple) of vertices with their labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub vertices: Vec<u32>,
    pub labels: Vec<String>,
    pub note: String,
}

impl Witness {
    pub fn new(bundle: &ComplexBundle, vertices: &[VertexId], note: impl Into<String>) -> Self {
        Witness {
            vertices: vertices.iter().map(|v| v.0).collect(),
            labels: vertices.iter().map(|&v| bundle.complex().label(v).to_string()).collect(),
            note: note.into(),
        }
    }

    /// Witness for data that is not a bundle vertex (abstract fixtures).
    pub fn plain(vertices: Vec<u32>, note: impl Into<String>) -> Self {
        Witness { vertices, labels: Vec::new(), note: note.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    /// the statement checked, in words
    pub statement: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub counts: BTreeMap<String, u64>,
    /// counterexamples (status `counterexample`) or notable instances
    pub witnesses: Vec<Witness>,
    /// truncation pairs matching no listed configuration whose apparent
    /// relation could not be broken by the extended witness search
    pub flagged: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckReport {
    pub fn new(id: &str, statement: &str) -> Self {
        CheckReport {
            id: id.to_string(),
            statement: statement.to_string(),
            status: Status::Verified,
            reason: None,
            counts: BTreeMap::new(),
            witnesses: Vec::new(),
            flagged: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn skipped(id: &str, statement: &str, reason: impl Into<String>) -> Self {
        let mut r = Self::new(id, statement);
        r.status = Status::Skipped;
        r.reason = Some(reason.into());
        r
    }

    pub fn count(&mut self, key: &str, n: u64) {
        *self.counts.entry(key.to_string()).or_insert(0) += n;
    }

    /// Records a counterexample; keeps at most a handful of witnesses.
    pub fn fail(&mut self, w: Witness) {
        self.status = Status::Counterexample;
        self.count("counterexamples", 1);
        if self.witnesses.len() < 16 {
            self.witnesses.push(w);
        }
    }

    pub fn flag(&mut self, w: Witness) {
        self.count("flagged", 1);
        if self.flagged.len() < 16 {
            self.flagged.push(w);
        }
    }

    /// Demotes a passing check to a bounded scan.
    pub fn bounded(mut self) -> Self {
        if self.status == Status::Verified {
            self.status = Status::NoCounterexampleWithinBound;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Counterexample
    }

    pub fn timed(mut self, start: Option<Instant>) -> Self {
        self.elapsed_ms = start.map(|s| s.elapsed().as_millis() as u64);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surface: Option<[u32; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(rename = "W", skip_serializing_if = "Option::is_none")]
    pub weight_bound: Option<u32>,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn for_bundle(bundle: &ComplexBundle, seed: u64, checks: Vec<CheckReport>) -> Self {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            surface: Some(bundle.surface().as_array()),
            kind: Some(bundle.kind().to_string()),
            weight_bound: Some(bundle.weight_bound()),
            seed,
            checks,
        }
    }

    pub fn has_counterexample(&self) -> bool {
        self.checks.iter().any(|c| !c.passed())
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
