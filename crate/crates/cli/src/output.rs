//! Report writing: atomic file replacement, CSV formatting, run manifests.

use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::error::CliError;

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes `bytes` to a temporary sibling and renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let runtime = |e: std::io::Error| CliError::Runtime(format!("writing {}: {e}", path.display()));
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(runtime)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let mut f = std::fs::File::create(&tmp).map_err(runtime)?;
        f.write_all(bytes).map_err(runtime)?;
        f.sync_all().map_err(runtime)?;
    }
    std::fs::rename(&tmp, path).map_err(runtime)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Runtime(format!("serialising {}: {e}", path.display())))?;
    s.push('\n');
    write_atomic(path, s.as_bytes())
}

/// CSV with a header row; every row must have as many cells as the header.
pub struct Csv {
    text: String,
    width: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Csv {
        Csv {
            text: header.join(",") + "\n",
            width: header.len(),
        }
    }

    pub fn row(&mut self, cells: &[String]) {
        assert_eq!(cells.len(), self.width, "CSV row width");
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        write_atomic(path, self.text.as_bytes())
    }
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub tool_version: &'static str,
    pub master_seed: u64,
    pub threads: usize,
    pub config: serde_json::Value,
    pub artifacts: Vec<String>,
    pub wall_time_s: f64,
}

/// Collects artifact paths during a command and writes `manifest.json` last.
pub struct ManifestBuilder {
    out_dir: PathBuf,
    command: String,
    seed: u64,
    config: serde_json::Value,
    artifacts: Vec<String>,
    started: Instant,
}

impl ManifestBuilder {
    pub fn new(out_dir: &Path, command: &str, seed: u64) -> ManifestBuilder {
        ManifestBuilder {
            out_dir: out_dir.to_path_buf(),
            command: command.into(),
            seed,
            config: serde_json::Value::Null,
            artifacts: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn config<T: Serialize>(&mut self, config: &T) {
        self.config = serde_json::to_value(config).unwrap_or(serde_json::Value::Null);
    }

    /// Path for an artifact inside the output directory, recorded in the
    /// manifest.
    pub fn artifact(&mut self, relative: impl AsRef<Path>) -> PathBuf {
        let relative = relative.as_ref();
        self.artifacts
            .push(relative.to_string_lossy().replace('\\', "/"));
        self.out_dir.join(relative)
    }

    pub fn finish(self) -> Result<PathBuf, CliError> {
        let manifest = RunManifest {
            command: self.command,
            tool_version: env!("CARGO_PKG_VERSION"),
            master_seed: self.seed,
            threads: ansatz_core::parallel::current_threads(),
            config: self.config,
            artifacts: self.artifacts,
            wall_time_s: self.started.elapsed().as_secs_f64(),
        };
        let path = self.out_dir.join("manifest.json");
        write_json(&path, &manifest)?;
        Ok(path)
    }
}
