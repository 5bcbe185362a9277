//! Machine-readable run reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::pipeline::{Mode, PassReport};
use crate::sim::Equivalence;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub deviation: f64,
    pub tol: f64,
}

/// One optimization run. Field names are part of the file format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub input: String,
    pub mode: String,
    pub n_original: usize,
    pub n_reused: usize,
    pub d_original: usize,
    pub d_reused: usize,
    pub g2_original: usize,
    pub g2_reused: usize,
    pub rule_counts: BTreeMap<String, usize>,
    pub reuse_count: usize,
    pub wall_time_seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub equivalence: Option<EquivalenceReport>,
}

impl ReportDocument {
    pub fn new(input: impl Into<String>, mode: Mode, report: &PassReport) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            input: input.into(),
            mode: mode.name().to_string(),
            n_original: report.n_original,
            n_reused: report.n_reused,
            d_original: report.d_original,
            d_reused: report.d_reused,
            g2_original: report.g2_original,
            g2_reused: report.g2_reused,
            rule_counts: report.rule_counts.clone(),
            reuse_count: report.reuse_count,
            wall_time_seconds: report.wall_time.as_secs_f64(),
            equivalence: None,
        }
    }

    pub fn with_equivalence(mut self, eq: Equivalence, tol: f64) -> Self {
        self.equivalence = Some(EquivalenceReport { equivalent: eq.equivalent, deviation: eq.deviation, tol });
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{Circuit, GateKind};
    use crate::pipeline::optimize;

    #[test]
    fn json_round_trip() {
        let mut c = Circuit::new("pair", 2, 2);
        c.gate(GateKind::H, 0).cgate(GateKind::X, 0, 1).measure(0, 0).measure(1, 1);
        let (_, rep) = optimize(&c, Mode::Proposed).unwrap();
        let doc = ReportDocument::new("pair", Mode::Proposed, &rep)
            .with_equivalence(Equivalence { equivalent: true, deviation: 0.0 }, 1e-9);
        let json = doc.to_json();
        for key in ["\"schema_version\": 1", "\"mode\": \"proposed\"", "\"n_reused\": 1", "\"bit_flip\": 1"] {
            assert!(json.contains(key), "{json}");
        }
        let back: ReportDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
    }
}
