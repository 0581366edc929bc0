use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

/// Machine-readable result of one command.
///
/// `digest` covers every field except `timings` and itself, and any nested
/// `timings` object, so two runs with the same flags and seed agree on it.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub outcome: String,
    pub seed: Option<u64>,
    pub input_digest: Option<String>,
    pub result: Value,
    pub timings: BTreeMap<String, f64>,
    pub digest: String,
}

impl RunReport {
    pub fn new(
        command: &str,
        outcome: &str,
        seed: Option<u64>,
        input_digest: Option<String>,
        result: impl Serialize,
        timings: BTreeMap<String, f64>,
    ) -> Self {
        let result = serde_json::to_value(result).expect("report values serialize");
        let mut report = RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            outcome: outcome.to_string(),
            seed,
            input_digest,
            result,
            timings,
            digest: String::new(),
        };
        report.digest = report.compute_digest();
        report
    }

    pub fn compute_digest(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(map) = &mut v {
            map.remove("digest");
        }
        strip_timings(&mut v);
        sha256_hex(
            serde_json::to_string(&v)
                .expect("value serializes")
                .as_bytes(),
        )
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("timings");
            map.values_mut().for_each(strip_timings);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
