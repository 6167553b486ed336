//! Sidecar manifests describing how an output file was produced.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct OutputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool_version: &'static str,
    pub command_line: Vec<String>,
    pub command: String,
    pub construction: Option<String>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub started_unix: u64,
    pub finished_unix: u64,
    pub outputs: Vec<OutputDigest>,
}

pub fn now_unix() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            tool_version: env!("CARGO_PKG_VERSION"),
            command_line: std::env::args().collect(),
            command: command.to_string(),
            construction: None,
            n: None,
            k: None,
            seed: None,
            threads: None,
            started_unix: now_unix(),
            finished_unix: 0,
            outputs: Vec::new(),
        }
    }

    pub fn sidecar_path(output: &Path) -> PathBuf {
        let mut name = output.as_os_str().to_owned();
        name.push(".manifest.json");
        PathBuf::from(name)
    }

    /// Records the digest of `output` and writes `<output>.manifest.json`.
    pub fn finish(mut self, output: &Path, bytes: &[u8]) -> std::io::Result<PathBuf> {
        self.finished_unix = now_unix();
        self.outputs
            .push(OutputDigest { path: output.display().to_string(), sha256: hex::encode(Sha256::digest(bytes)) });
        let path = Self::sidecar_path(output);
        let json = serde_json::to_string_pretty(&self).map_err(std::io::Error::other)?;
        fs::write(&path, json + "\n")?;
        Ok(path)
    }
}
