//! JSON output envelope and b-file rendering.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    /// A mathematically meaningful negative result.
    Finding,
    Error,
}

/// Top-level JSON object. Field order is the serialization order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub result: Value,
    pub status: Status,
}

impl Envelope {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope serializes");
        s.push('\n');
        s
    }
}

/// `index value` lines, indices consecutive from `start`.
pub fn bfile<I, T>(start: u64, values: I) -> String
where
    I: IntoIterator<Item = T>,
    T: std::fmt::Display,
{
    let mut out = String::new();
    for (i, v) in (start..).zip(values) {
        out.push_str(&format!("{i} {v}\n"));
    }
    out
}

/// Parses b-file text back into `(index, value)` pairs, checking that the
/// indices are consecutive.
pub fn parse_bfile(text: &str) -> Result<Vec<(u64, String)>, String> {
    let mut rows: Vec<(u64, String)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let (idx, val) = line
            .split_once(' ')
            .ok_or_else(|| format!("line {}: expected `index value`", lineno + 1))?;
        let idx: u64 = idx
            .parse()
            .map_err(|_| format!("line {}: bad index {idx:?}", lineno + 1))?;
        if val.is_empty() || !val.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("line {}: bad value {val:?}", lineno + 1));
        }
        if let Some(&(prev, _)) = rows.last() {
            if idx != prev + 1 {
                return Err(format!("line {}: index {idx} follows {prev}", lineno + 1));
            }
        }
        rows.push((idx, val.to_string()));
    }
    Ok(rows)
}
