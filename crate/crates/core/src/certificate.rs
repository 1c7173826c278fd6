//! Machine-readable verification records.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::TOOLKIT_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Reported,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub label: String,
    pub inputs: Value,
    pub computed: Value,
    pub tolerance: Option<f64>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim_id: String,
    /// The formula or inequality being checked.
    pub anchor: String,
    pub parameters: BTreeMap<String, Value>,
    pub status: Status,
    pub evidence: Vec<Evidence>,
    pub toolkit_version: String,
    pub timestamp: String,
}

/// Tolerances recorded in every certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Root versus eigenvalue agreement.
    pub root: f64,
    /// Minimum gap for strict inequalities between Q-indices.
    pub gap: f64,
    /// Largest accepted eigen-residual.
    pub residual: f64,
    /// Agreement between the largest roots of two polynomials.
    pub cross: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            root: 1e-7,
            gap: 1e-9,
            residual: 1e-8,
            cross: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Assertion,
    Report,
}

/// Accumulates evidence and settles the status on [`finish`](Self::finish).
#[derive(Debug, Clone)]
pub struct CertificateBuilder {
    claim_id: String,
    anchor: String,
    parameters: BTreeMap<String, Value>,
    evidence: Vec<Evidence>,
    kind: Kind,
}

impl CertificateBuilder {
    /// A claim that passes only if every evidence record is within tolerance.
    pub fn assertion(claim_id: impl Into<String>, anchor: impl Into<String>) -> Self {
        Self::with_kind(claim_id, anchor, Kind::Assertion)
    }

    /// A finding that is recorded but never fails a run.
    pub fn report(claim_id: impl Into<String>, anchor: impl Into<String>) -> Self {
        Self::with_kind(claim_id, anchor, Kind::Report)
    }

    fn with_kind(claim_id: impl Into<String>, anchor: impl Into<String>, kind: Kind) -> Self {
        CertificateBuilder {
            claim_id: claim_id.into(),
            anchor: anchor.into(),
            parameters: BTreeMap::new(),
            evidence: Vec::new(),
            kind,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters.insert(
            key.to_string(),
            serde_json::to_value(value).expect("parameters serialize"),
        );
        self
    }

    pub fn tolerances(self, tol: &Tolerances) -> Self {
        self.param("tolerances", tol)
    }

    pub fn push(
        &mut self,
        label: impl Into<String>,
        inputs: Value,
        computed: Value,
        tolerance: Option<f64>,
        ok: bool,
    ) {
        self.evidence.push(Evidence {
            label: label.into(),
            inputs,
            computed,
            tolerance,
            ok,
        });
    }

    pub fn extend(&mut self, ev: impl IntoIterator<Item = Evidence>) {
        self.evidence.extend(ev);
    }

    pub fn finish(self) -> Certificate {
        let status = match self.kind {
            Kind::Report => Status::Reported,
            Kind::Assertion if !self.evidence.is_empty() && self.evidence.iter().all(|e| e.ok) => {
                Status::Pass
            }
            Kind::Assertion => Status::Fail,
        };
        Certificate {
            claim_id: self.claim_id,
            anchor: self.anchor,
            parameters: self.parameters,
            status,
            evidence: self.evidence,
            toolkit_version: TOOLKIT_VERSION.to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
        }
    }
}

/// `(passed, failed, reported)` counts.
pub fn tally(certs: &[Certificate]) -> (usize, usize, usize) {
    certs.iter().fold((0, 0, 0), |(p, f, r), c| match c.status {
        Status::Pass => (p + 1, f, r),
        Status::Fail => (p, f + 1, r),
        Status::Reported => (p, f, r + 1),
    })
}

/// Float rendered for JSON; non-finite values become strings.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or_else(|| Value::String(x.to_string()), Value::Number)
}
