//! Run directory bookkeeping: a `manifest.json` with the SHA-256 of every
//! artifact, checked again before anything is reported from the directory.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use walkdir::WalkDir;

use crate::{runtime, usage, CliError};

pub const MANIFEST: &str = "manifest.json";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunKind {
    Evolve,
    Ablate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub kind: RunKind,
    pub alpha: f64,
    pub beta: f64,
    /// False when the run stopped with an error.
    pub complete: bool,
    /// Relative path (forward slashes) to lowercase hex SHA-256.
    pub files: BTreeMap<String, String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

fn rel_name(root: &Path, path: &Path) -> String {
    let rel = path.strip_prefix(root).unwrap_or(path);
    rel.components().map(|c| c.as_os_str().to_string_lossy()).collect::<Vec<_>>().join("/")
}

/// Hashes every file below `dir` except the manifest itself.
pub fn write_manifest(dir: &Path, kind: RunKind, alpha: f64, beta: f64, complete: bool) -> Result<Manifest, CliError> {
    let mut files = BTreeMap::new();
    for entry in WalkDir::new(dir).sort_by_file_name() {
        let entry = entry.map_err(runtime)?;
        if !entry.file_type().is_file() || entry.path() == dir.join(MANIFEST) {
            continue;
        }
        let bytes = fs::read(entry.path()).map_err(|e| runtime(format!("{}: {e}", entry.path().display())))?;
        files.insert(rel_name(dir, entry.path()), sha256_hex(&bytes));
    }
    let m = Manifest { kind, alpha, beta, complete, files };
    write_json(&dir.join(MANIFEST), &m)?;
    Ok(m)
}

/// Loads the manifest and checks every listed file against its hash.
pub fn verify(dir: &Path) -> Result<Manifest, CliError> {
    let path = dir.join(MANIFEST);
    let text = fs::read_to_string(&path)
        .map_err(|e| usage(format!("{}: {e} (not a run directory?)", path.display())))?;
    let m: Manifest = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    for (name, want) in &m.files {
        let p = dir.join(name);
        let bytes = fs::read(&p).map_err(|e| usage(format!("integrity error: {}: {e}", p.display())))?;
        if &sha256_hex(&bytes) != want {
            return Err(usage(format!("integrity error: {} does not match the manifest", p.display())));
        }
    }
    Ok(m)
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| runtime(format!("{}: {e}", parent.display())))?;
    }
    let text = serde_json::to_string_pretty(value).map_err(runtime)?;
    fs::write(path, text + "\n").map_err(|e| runtime(format!("{}: {e}", path.display())))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// `init.json` followed by `gen_000.json`, `gen_001.json`, ... as present.
pub fn generation_logs(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    if dir.join("init.json").is_file() {
        out.push(dir.join("init.json"));
    }
    let mut g = 0;
    while dir.join(format!("gen_{g:03}.json")).is_file() {
        out.push(dir.join(format!("gen_{g:03}.json")));
        g += 1;
    }
    out
}
