//! Run manifests: a JSON sidecar written next to every file output so a run
//! can be reproduced from its inputs, configuration and seeds.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliResult;

#[derive(Debug, Serialize)]
pub struct InputHash {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    /// The invoked subcommand and its arguments.
    pub command: Vec<String>,
    pub inputs: Vec<InputHash>,
    /// Effective configuration after defaults were applied.
    pub config: serde_json::Value,
    pub rng_seeds: Vec<u64>,
    pub version: String,
    pub duration_seconds: f64,
    /// Files this manifest describes.
    pub outputs: Vec<String>,
}

pub struct ManifestBuilder {
    started: Instant,
    inputs: Vec<InputHash>,
    seeds: Vec<u64>,
    outputs: Vec<String>,
}

impl ManifestBuilder {
    pub fn new() -> Self {
        ManifestBuilder {
            started: Instant::now(),
            inputs: Vec::new(),
            seeds: Vec::new(),
            outputs: Vec::new(),
        }
    }

    /// Records an input file and returns its contents.
    pub fn read_input(&mut self, path: &Path) -> CliResult<String> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            crate::error::CliError::usage(format!("cannot read {}: {e}", path.display()))
        })?;
        let mut hasher = Sha256::new();
        hasher.update(text.as_bytes());
        self.inputs.push(InputHash {
            path: path.display().to_string(),
            sha256: format!("{:x}", hasher.finalize()),
        });
        Ok(text)
    }

    pub fn record_seed(&mut self, seed: u64) {
        self.seeds.push(seed);
    }

    pub fn record_output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    /// Writes `<output>.manifest.json` describing the run.
    pub fn write(self, output: &Path, config: serde_json::Value) -> CliResult<()> {
        let manifest = RunManifest {
            command: std::env::args().collect(),
            inputs: self.inputs,
            config,
            rng_seeds: self.seeds,
            version: env!("CARGO_PKG_VERSION").to_string(),
            duration_seconds: self.started.elapsed().as_secs_f64(),
            outputs: self.outputs,
        };
        let path = manifest_path(output);
        std::fs::write(&path, serde_json::to_string_pretty(&manifest)?)?;
        Ok(())
    }
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    output.with_file_name(name)
}
