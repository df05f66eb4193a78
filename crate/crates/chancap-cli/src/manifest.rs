//! Experiment manifests and machine-readable reports.
//!
//! Every run embeds its full manifest (command, channel spec, dimensions,
//! seed, budget, output path) and the crate version into the report, and
//! all reported numbers are rounded to 12 significant digits, so a rerun
//! with an identical manifest reproduces the output byte for byte.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub factory: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub params: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub file: Option<String>,
}

impl ChannelSpec {
    /// Parse `factory`, `factory:value` or `factory:path`.
    pub fn parse(text: &str) -> CliResult<Self> {
        let (factory, arg) = match text.split_once(':') {
            Some((f, a)) => (f.trim(), Some(a.trim())),
            None => (text.trim(), None),
        };
        let factory = factory.to_string();
        match factory.as_str() {
            "identity" | "measure-prepare" | "complementary-measure-prepare" | "file" => {
                if factory == "file" && arg.is_none() {
                    return Err(CliError::Usage("file: requires a path".into()));
                }
                let file = match factory.as_str() {
                    "file" => arg.map(str::to_string),
                    "measure-prepare" => arg.map(str::to_string),
                    _ => None,
                };
                Ok(Self {
                    factory,
                    params: Vec::new(),
                    file,
                })
            }
            "depolarizing" | "amplitude-damping" | "dephasing" | "random" => {
                let value: f64 = arg
            .ok_or_else(|| CliError::Usage(format!("{factory} needs a parameter, e.g. {factory}:0.5")))?
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad parameter for {factory}")))?;
                Ok(Self {
                    factory,
                    params: vec![value],
                    file: None,
                })
            }
            other => Err(CliError::Usage(format!("unknown channel factory '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Budget {
    pub restarts: usize,
    pub tol: f64,
    pub max_iters: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub channel: Option<ChannelSpec>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub channel_b: Option<ChannelSpec>,
    pub dims: Vec<usize>,
    pub seed: u64,
    pub budget: Budget,
    pub bits: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub output: Option<String>,
    /// Command-specific knobs, ordered for reproducible serialization.
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub extra: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub manifest: Manifest,
    pub version: String,
    pub results: Value,
}

impl Report {
    pub fn new(manifest: Manifest, results: Value) -> Self {
        Self {
            manifest,
            version: env!("CARGO_PKG_VERSION").to_string(),
            results,
        }
    }
}

/// Round to 12 significant digits; keeps reports stable across platforms
/// and reruns.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let digits = 12 - x.abs().log10().floor() as i32 - 1;
    let scale = 10f64.powi(digits);
    (x * scale).round() / scale
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(x) = n.as_f64() {
                if n.is_f64() {
                    if let Some(rounded) = serde_json::Number::from_f64(round_sig(x)) {
                        *v = Value::Number(rounded);
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Serialize a report with rounded numbers; optionally write to `--out`.
pub fn emit_json(report: &Report, out: Option<&Path>) -> CliResult<String> {
    let mut value = serde_json::to_value(report)
        .map_err(|e| CliError::Validation(format!("report serialization: {e}")))?;
    round_value(&mut value);
    let text = serde_json::to_string_pretty(&value)
        .map_err(|e| CliError::Validation(format!("report serialization: {e}")))?;
    if let Some(path) = out {
        let mut f = std::fs::File::create(path)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display())))?;
        f.write_all(text.as_bytes())
            .and_then(|_| f.write_all(b"\n"))
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(text)
}

/// CSV rendering: a table when `rows` are given, a flat key,value dump of
/// the results otherwise.
pub fn emit_csv(
    report: &Report,
    header: Option<&[&str]>,
    rows: Option<&[Vec<f64>]>,
    out: Option<&Path>,
) -> CliResult<String> {
    let mut text = String::new();
    match (header, rows) {
        (Some(header), Some(rows)) => {
            text.push_str(&header.join(","));
            text.push('\n');
            for row in rows {
                let cells: Vec<String> =
                    row.iter().map(|x| format!("{}", round_sig(*x))).collect();
                text.push_str(&cells.join(","));
                text.push('\n');
            }
        }
        _ => {
            text.push_str("key,value\n");
            let mut value = report.results.clone();
            round_value(&mut value);
            flatten_into_csv(&value, String::new(), &mut text);
        }
    }
    if let Some(path) = out {
        std::fs::write(path, &text)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(text)
}

fn flatten_into_csv(v: &Value, prefix: String, text: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_into_csv(inner, key, text);
            }
        }
        Value::Array(items) => {
            for (i, inner) in items.iter().enumerate() {
                flatten_into_csv(inner, format!("{prefix}[{i}]"), text);
            }
        }
        other => {
            text.push_str(&format!("{prefix},{other}\n"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_12_digits() {
        assert_eq!(round_sig(std::f64::consts::LN_2), 0.693147180560);
        assert_eq!(round_sig(0.0), 0.0);
        assert!(round_sig(f64::INFINITY).is_infinite());
        assert_eq!(round_sig(123456.789012345), 123456.789012);
    }

    #[test]
    fn channel_spec_parsing() {
        let s = ChannelSpec::parse("depolarizing:0.75").unwrap();
        assert_eq!(s.factory, "depolarizing");
        assert_eq!(s.params, vec![0.75]);
        assert!(ChannelSpec::parse("identity").unwrap().params.is_empty());
        assert!(ChannelSpec::parse("random").is_err());
        assert!(ChannelSpec::parse("warp-drive").is_err());
    }
}
