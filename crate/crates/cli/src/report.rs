//! Machine-readable run reports.
//!
//! Frozen JSON schema for selection runs: top-level keys `manifest`,
//! `method`, `steps` (array of `{index, name, gain, cumulative}`),
//! `dropped`, `elapsed_ms`. Feature indices are 0-based in JSON; the
//! human-readable output shows 1-based positions alongside names.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};
use socc_core::selector::{SelectMethod, SelectionStep};
use socc_core::{Error, Result};

/// Provenance block carried by every JSON report.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    /// SHA-256 of the input file bytes, when the command reads a file.
    pub input_fingerprint: Option<String>,
    /// Echo of the effective configuration.
    pub config: serde_json::Value,
    pub version: String,
    /// Wall-clock time per phase, milliseconds.
    pub timings_ms: BTreeMap<String, f64>,
}

impl RunManifest {
    pub fn new(command: &str, config: serde_json::Value) -> Self {
        RunManifest {
            command: command.to_string(),
            input_fingerprint: None,
            config,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn record_timing(&mut self, phase: &str, ms: f64) {
        self.timings_ms.insert(phase.to_string(), ms);
    }
}

/// Hex SHA-256 of a file's contents.
pub fn file_fingerprint(path: &Path) -> Result<String> {
    let mut file = std::fs::File::open(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 8192];
    loop {
        let read = file
            .read(&mut buf)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        if read == 0 {
            break;
        }
        hasher.update(&buf[..read]);
    }
    let mut hex = String::with_capacity(64);
    for byte in hasher.finalize() {
        hex.push_str(&format!("{byte:02x}"));
    }
    Ok(hex)
}

/// The full selection report as written to `--output`.
#[derive(Debug, Serialize)]
pub struct SelectionReportJson<'a> {
    pub manifest: &'a RunManifest,
    pub method: SelectMethod,
    pub steps: &'a [SelectionStep],
    pub dropped: &'a [usize],
    pub elapsed_ms: f64,
}
