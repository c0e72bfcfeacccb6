//! Reproducibility manifests: identical manifests produce identical outputs,
//! since every command is a pure function of its parameters and input files.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
pub struct RunManifest {
    subcommand: String,
    parameters: BTreeMap<String, String>,
    input_digests: BTreeMap<String, String>,
    tool_version: String,
    output_paths: Vec<String>,
}

impl RunManifest {
    pub fn new(version: &str) -> Self {
        RunManifest {
            subcommand: String::new(),
            parameters: BTreeMap::new(),
            input_digests: BTreeMap::new(),
            tool_version: version.to_string(),
            output_paths: Vec::new(),
        }
    }

    pub fn set_subcommand(&mut self, name: &str) {
        self.subcommand = name.to_string();
    }

    pub fn record_param(&mut self, key: &str, value: impl Into<String>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    /// Reads and digests an input file, recording its sha256.
    pub fn record_input(&mut self, path: &Path) -> std::io::Result<Vec<u8>> {
        let bytes = std::fs::read(path)?;
        let mut hasher = Sha256::new();
        hasher.update(&bytes);
        let digest = hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect::<String>();
        self.input_digests
            .insert(path.display().to_string(), digest);
        Ok(bytes)
    }

    pub fn record_output(&mut self, path: &Path) {
        self.output_paths.push(path.display().to_string());
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let json = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(path, format!("{json}\n"))
    }
}
