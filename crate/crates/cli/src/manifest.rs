//! Run manifests: every command records its inputs, outputs (with content
//! digests), and configuration, so experiment outputs are diffable and
//! attributable. The manifest is always the last file written.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub struct ManifestBuilder {
    command: Vec<String>,
    config: Value,
    inputs: Vec<(PathBuf, String)>,
    outputs: Vec<(PathBuf, String)>,
    partial: bool,
    started: Instant,
}

fn digest(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    format!("{:x}", h.finalize())
}

impl ManifestBuilder {
    pub fn new(config: Value) -> ManifestBuilder {
        ManifestBuilder {
            command: std::env::args().collect(),
            config,
            inputs: Vec::new(),
            outputs: Vec::new(),
            partial: false,
            started: Instant::now(),
        }
    }

    pub fn record_input(&mut self, path: &Path, bytes: &[u8]) {
        self.inputs.push((path.to_path_buf(), digest(bytes)));
    }

    /// Writes an output file and records its digest.
    pub fn write_output(&mut self, path: &Path, bytes: &[u8]) -> std::io::Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, bytes)?;
        self.outputs.push((path.to_path_buf(), digest(bytes)));
        Ok(())
    }

    /// Flags the run as truncated by a budget; kept in the manifest so
    /// partial outputs are never mistaken for complete ones.
    pub fn mark_partial(&mut self) {
        self.partial = true;
    }

    pub fn finish(self, out_dir: &Path) -> std::io::Result<PathBuf> {
        let entry = |(p, d): &(PathBuf, String)| json!({"path": p.display().to_string(), "sha256": d});
        let manifest = json!({
            "tool_version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "config": self.config,
            "inputs": self.inputs.iter().map(entry).collect::<Vec<_>>(),
            "outputs": self.outputs.iter().map(entry).collect::<Vec<_>>(),
            "partial": self.partial,
            "duration_ms": self.started.elapsed().as_millis() as u64,
        });
        fs::create_dir_all(out_dir)?;
        let path = out_dir.join("manifest.json");
        fs::write(&path, serde_json::to_string_pretty(&manifest).expect("serializable"))?;
        Ok(path)
    }
}
