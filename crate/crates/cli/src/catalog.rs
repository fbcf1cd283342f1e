//! Append-only NDJSON catalog of computed results.

use std::io::{BufRead, BufReader, Read, Seek, SeekFrom, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

pub const ENGINE_VERSION: &str = concat!("qcolour ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub input_digest: String,
    pub command: String,
    pub input: Value,
    pub result: Value,
    pub engine_version: String,
    pub wall_time_ms: u64,
    /// Set when an earlier entry with the same digest holds a different result.
    #[serde(default)]
    pub conflict: bool,
}

/// SHA-256 of the canonical JSON of `{"command", "input"}`.
pub fn digest(command: &str, input: &Value) -> String {
    let canonical = serde_json::json!({ "command": command, "input": input }).to_string();
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

/// Every parseable entry in file order. Corrupt lines are skipped with a
/// warning on stderr; a missing file is an empty catalog.
pub fn load(path: &Path) -> Result<Vec<CatalogEntry>> {
    let file = match std::fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(CliError::io(path, e)),
    };
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| CliError::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str(&line) {
            Ok(entry) => out.push(entry),
            Err(e) => eprintln!("warning: {}:{}: skipping corrupt catalog line: {e}", path.display(), i + 1),
        }
    }
    Ok(out)
}

/// The newest entry with this digest.
pub fn query(path: &Path, digest: &str) -> Result<Option<CatalogEntry>> {
    Ok(load(path)?.into_iter().rev().find(|e| e.input_digest == digest))
}

/// Appends an entry, marking it as a conflict when the newest entry with the
/// same digest has a different result. Returns the entry as written.
pub fn append(path: &Path, mut entry: CatalogEntry) -> Result<CatalogEntry> {
    if let Some(prev) = query(path, &entry.input_digest)? {
        if prev.result != entry.result {
            entry.conflict = true;
            eprintln!(
                "warning: result for digest {} differs from the entry recorded by {}",
                entry.input_digest, prev.engine_version
            );
        }
    }
    let mut line = serde_json::to_string(&entry).expect("catalog entries serialize");
    line.push('\n');
    let mut f = std::fs::OpenOptions::new()
        .create(true)
        .read(true)
        .append(true)
        .open(path)
        .map_err(|e| CliError::io(path, e))?;
    if ends_mid_line(&mut f).map_err(|e| CliError::io(path, e))? {
        line.insert(0, '\n');
    }
    f.write_all(line.as_bytes()).map_err(|e| CliError::io(path, e))?;
    Ok(entry)
}

fn ends_mid_line(f: &mut std::fs::File) -> std::io::Result<bool> {
    if f.metadata()?.len() == 0 {
        return Ok(false);
    }
    f.seek(SeekFrom::End(-1))?;
    let mut last = [0u8];
    f.read_exact(&mut last)?;
    Ok(last[0] != b'\n')
}
