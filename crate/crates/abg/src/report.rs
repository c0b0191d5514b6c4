//! Canonical JSON run reports.
//!
//! Reports serialize through `serde_json::Value`, whose object maps keep
//! keys sorted, and contain integers and strings only, so equal runs give
//! byte-equal JSON. Timings live in one top-level map that comparisons
//! strip, since they are the only nondeterministic content.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Every check the pipeline knows, in execution order.
pub const CHECK_NAMES: &[&str] = &[
    "build",
    "fullness",
    "dual-split",
    "boundary-eq",
    "x-direct-eq",
    "pseudomanifold",
    "links",
    "orientation",
    "double-cover-iso",
    "euler",
    "cocycle-h1",
    "mod2-degree",
];

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "pass"),
            CheckStatus::Fail => write!(f, "FAIL"),
            CheckStatus::Skipped => write!(f, "skipped"),
        }
    }
}

#[derive(Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub status: CheckStatus,
    pub details: serde_json::Value,
}

#[derive(Serialize)]
pub struct Report {
    pub version: String,
    pub k: u32,
    pub l: u32,
    pub group: String,
    pub checks: Vec<CheckOutcome>,
    /// File name to sha256 hex of everything written next to the report.
    pub artifacts: BTreeMap<String, String>,
    /// Wall-clock milliseconds per stage; excluded from comparisons.
    pub timings_ms: BTreeMap<String, u64>,
    /// Set by verification runs: whether the input file matched the built
    /// hypersurface byte for byte.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_match: Option<bool>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.status != CheckStatus::Fail)
            && self.input_match != Some(false)
    }

    pub fn to_canonical_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value prints");
        s.push('\n');
        s
    }

    /// Canonical JSON with the timing map removed, for determinism
    /// comparisons across runs.
    pub fn comparable_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let serde_json::Value::Object(map) = &mut v {
            map.remove("timings_ms");
        }
        let mut s = serde_json::to_string_pretty(&v).expect("value prints");
        s.push('\n');
        s
    }

    pub fn digest(&self) -> String {
        sha256_hex(self.to_canonical_json().as_bytes())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let out = h.finalize();
    let mut s = String::with_capacity(64);
    for b in out {
        s.push_str(&format!("{:02x}", b));
    }
    s
}
