//! The report envelope and its CSV and table views. JSON is canonical; the
//! other two are derived from it.

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;

/// Bumped whenever any payload changes shape.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Timestamps {
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
}

pub fn unix_ms() -> u128 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis())
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: String,
    pub config: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamps: Option<Timestamps>,
    pub payload: Value,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Header and rows of the payload's record array, or `key, value` pairs of
/// its top-level fields when there is none.
fn grid(payload: &Value, rows_key: Option<&str>) -> (Vec<String>, Vec<Vec<String>>) {
    if let Some(Value::Array(rows)) = rows_key.and_then(|k| payload.get(k)) {
        let mut header: Vec<String> = Vec::new();
        for r in rows {
            if let Value::Object(m) = r {
                for k in m.keys() {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
        }
        let body = rows
            .iter()
            .map(|r| header.iter().map(|h| r.get(h).map(cell).unwrap_or_default()).collect())
            .collect();
        return (header, body);
    }
    let body = match payload {
        Value::Object(m) => m.iter().map(|(k, v)| vec![k.clone(), cell(v)]).collect(),
        other => vec![vec!["value".into(), cell(other)]],
    };
    (vec!["key".into(), "value".into()], body)
}

pub fn to_csv(payload: &Value, rows_key: Option<&str>) -> String {
    let (header, body) = grid(payload, rows_key);
    let mut out = String::new();
    for row in std::iter::once(&header).chain(&body) {
        out.push_str(&row.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

fn aligned(header: &[String], body: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|i| body.iter().map(|r| r[i].chars().count()).chain([header[i].chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |row: &[String]| {
        row.iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(header);
    out.push('\n');
    out.push_str(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    out.push('\n');
    for r in body {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

/// Scalar summary fields first, then the record table if there is one.
pub fn to_table(payload: &Value, rows_key: Option<&str>) -> String {
    let mut out = String::new();
    if let (Some(key), Value::Object(m)) = (rows_key, payload) {
        let summary: Vec<Vec<String>> = m
            .iter()
            .filter(|(k, v)| k.as_str() != key && !v.is_array() && !v.is_object())
            .map(|(k, v)| vec![k.clone(), cell(v)])
            .collect();
        if !summary.is_empty() {
            out.push_str(&aligned(&["key".into(), "value".into()], &summary));
            out.push('\n');
        }
    }
    let (header, body) = grid(payload, rows_key);
    out.push_str(&aligned(&header, &body));
    out
}
