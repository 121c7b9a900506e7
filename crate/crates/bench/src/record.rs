use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use scndp_core::{EpcEstimate, NodeSet};

use crate::algorithm::Algorithm;

/// Wall-clock seconds per phase.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub select: f64,
    pub local_search: f64,
    pub final_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

/// One result row: an algorithm applied to one instance under one
/// probability setting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub algorithm: Algorithm,
    pub setting: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub epc: Option<EpcEstimate>,
    /// Deleted node ids in the instance's own numbering.
    pub selection: Option<NodeSet>,
    pub seconds: Timings,
    pub seed: u64,
    pub config_hash: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// First 16 hex digits of the SHA-256 of `value`'s JSON form.
pub fn config_hash<T: Serialize>(value: &T) -> String {
    let json = serde_json::to_vec(value).expect("config serializes");
    hex::encode(&Sha256::digest(&json)[..8])
}
