//! Deterministic run reports.
//!
//! The serialized payload never contains timing; the checksum is the SHA-256
//! of its compact JSON encoding, whose key order is the field order below.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: &str, ok: bool, note: Option<String>) -> Check {
        Check {
            name: name.into(),
            status: Status::from_bool(ok),
            note,
        }
    }

    pub fn skipped(name: &str, note: &str) -> Check {
        Check {
            name: name.into(),
            status: Status::Skipped,
            note: Some(note.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Parameters {
    pub p: u64,
    pub q: u64,
    pub defining_polynomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub label: String,
    pub dim: u64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub entries: Vec<Entry>,
    pub rank: u64,
    pub sum_of_squares: u64,
    pub global_dim: u64,
}

impl From<&anisogauge::fusionring::Census> for CensusReport {
    fn from(c: &anisogauge::fusionring::Census) -> Self {
        CensusReport {
            entries: c
                .entries
                .iter()
                .map(|e| Entry {
                    label: e.label.clone(),
                    dim: e.dim,
                    count: e.count,
                })
                .collect(),
            rank: c.rank(),
            sum_of_squares: c.sum_of_squares(),
            global_dim: c.global_dim,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupOrders {
    pub anisotropic: u64,
    pub hyperbolic: u64,
    pub semidirect: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomSummary {
    pub basis_size: usize,
    pub nonzero_constants: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    pub fp_dims: Vec<u64>,
    pub global_dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub group_theoretical: bool,
    pub mu1: String,
    pub mu2: String,
    pub ratio: String,
    pub ratio_inv: String,
    pub witness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity_check: Option<bool>,
}

impl From<&anisogauge::gtcheck::GTVerdict> for VerdictReport {
    fn from(v: &anisogauge::gtcheck::GTVerdict) -> Self {
        VerdictReport {
            group_theoretical: v.group_theoretical,
            mu1: v.mu1.to_string(),
            mu2: v.mu2.to_string(),
            ratio: v.ratio.to_string(),
            ratio_inv: v.ratio_inv.to_string(),
            witness: v.witness.clone(),
            identity_check: v.identity_check,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleRankReport {
    pub order: usize,
    pub abelian: bool,
    pub class_count: usize,
    pub double_rank: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub p: u64,
    pub q: u64,
    pub exists: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<u64>,
    pub verify: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Everything a command reports, minus timing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameters: Option<Parameters>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub census: Option<CensusReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_orders: Option<GroupOrders>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fusion_axioms: Option<AxiomSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gt_verdict: Option<VerdictReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub double_rank: Option<DoubleRankReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<SweepRow>>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl RunReport {
    pub fn new(command: &str) -> RunReport {
        RunReport {
            command: command.into(),
            parameters: None,
            census: None,
            group_orders: None,
            fusion_axioms: None,
            gt_verdict: None,
            double_rank: None,
            sweep: None,
            checks: Vec::new(),
            passed: true,
        }
    }

    pub fn push(&mut self, check: Check) {
        if check.status == Status::Fail {
            self.passed = false;
        }
        self.checks.push(check);
    }

    /// Compact JSON of the payload.
    pub fn payload_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn checksum(&self) -> String {
        hex::encode(Sha256::digest(self.payload_json().as_bytes()))
    }
}
