use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub started_unix_ms: u128,
    pub wall_seconds: f64,
}

/// Everything needed to replay a run: `resolved_args` is a complete
/// argument list (config expanded, seed explicit).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub argv: Vec<String>,
    pub resolved_args: Vec<String>,
    pub config: serde_json::Value,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub timing: Timing,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Collects input digests and written outputs while a command runs.
pub struct Recorder {
    started: Instant,
    started_unix_ms: u128,
    inputs: Vec<FileDigest>,
    outputs: Vec<FileDigest>,
}

impl Default for Recorder {
    fn default() -> Self {
        Self::new()
    }
}

impl Recorder {
    pub fn new() -> Self {
        Self {
            started: Instant::now(),
            started_unix_ms: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_millis())
                .unwrap_or(0),
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn read(&mut self, path: &Path) -> CliResult<String> {
        let bytes = std::fs::read(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        self.inputs.push(FileDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(&bytes),
        });
        String::from_utf8(bytes)
            .map_err(|_| CliError::Input(format!("{}: not valid UTF-8", path.display())))
    }

    pub fn write(&mut self, path: &Path, contents: &[u8]) -> CliResult<()> {
        write_file(path, contents)?;
        self.outputs.push(FileDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(contents),
        });
        Ok(())
    }

    pub fn finish(self, header: ManifestHeader) -> RunManifest {
        RunManifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: header.command,
            argv: header.argv,
            resolved_args: header.resolved_args,
            config: header.config,
            seed: header.seed,
            threads: header.threads,
            inputs: self.inputs,
            outputs: self.outputs,
            timing: Timing {
                started_unix_ms: self.started_unix_ms,
                wall_seconds: self.started.elapsed().as_secs_f64(),
            },
        }
    }
}

pub struct ManifestHeader {
    pub command: String,
    pub argv: Vec<String>,
    pub resolved_args: Vec<String>,
    pub config: serde_json::Value,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
}

pub fn write_file(path: &Path, contents: &[u8]) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// `<base>.manifest.json`, where `base` is the output file or prefix.
pub fn manifest_path(base: &Path) -> PathBuf {
    let mut s = base.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

pub fn load(path: &Path) -> CliResult<RunManifest> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}
