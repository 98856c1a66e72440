//! Canonical config echo and deterministic output writing.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::{Cli, CmdError};

/// Canonical echo of one command invocation. Every output embeds it (CSV
/// as a trailing `# config` comment, JSON in the record envelope), so a
/// run can be reproduced from its own output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: String,
    pub master_seed: u64,
    /// Full parameter set, canonicalized (sorted keys).
    pub params: serde_json::Value,
}

impl ExperimentConfig {
    pub fn new(command: &str, master_seed: u64, params: serde_json::Value) -> Self {
        Self { command: command.to_string(), master_seed, params }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    // used by the round-trip tests; the binary itself only emits configs
    #[cfg_attr(not(test), allow(dead_code))]
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Tabular real: 12 significant digits.
pub fn real(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else {
        format!("{v:.11e}")
    }
}

/// Assembles a CSV document: header, rows, then the config echo as a
/// trailing comment line.
pub fn csv_document(header: &str, rows: &[Vec<String>], config: &ExperimentConfig) -> String {
    let mut out = String::with_capacity(rows.len() * 64 + 128);
    out.push_str(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out.push_str("# config ");
    out.push_str(&config.to_json());
    out.push('\n');
    out
}

/// JSON record envelope: artifact version, config echo, result payload.
pub fn json_record(config: &ExperimentConfig, result: serde_json::Value) -> String {
    let record = serde_json::json!({
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "result": result,
    });
    let mut text = serde_json::to_string_pretty(&record).expect("record serializes");
    text.push('\n');
    text
}

/// Writes to `--out` or stdout.
pub fn emit(cli: &Cli, text: &str) -> Result<(), CmdError> {
    match &cli.out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(())
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
