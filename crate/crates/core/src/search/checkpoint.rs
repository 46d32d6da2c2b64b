use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{SearchQuery, SearchSummary};
use crate::error::{Error, Result};

pub const CHECKPOINT_VERSION: u32 = 1;

/// Durable state of a partially completed search, stored as pretty JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub format_version: u32,
    pub fingerprint: String,
    pub query: SearchQuery,
    pub next_unscanned: u64,
    pub summary: SearchSummary,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

impl Checkpoint {
    pub fn new(query: &SearchQuery, fingerprint: &str, summary: &SearchSummary) -> Self {
        Checkpoint {
            format_version: CHECKPOINT_VERSION,
            fingerprint: fingerprint.to_string(),
            query: query.clone(),
            next_unscanned: summary.next_unscanned,
            summary: summary.clone(),
        }
    }

    /// `Ok(None)` if the file does not exist.
    pub fn load(path: &Path) -> Result<Option<Checkpoint>> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(io_err(path)(e)),
        };
        let cp: Checkpoint = serde_json::from_str(&text).map_err(|e| Error::CheckpointFormat {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })?;
        if cp.format_version != CHECKPOINT_VERSION {
            return Err(Error::CheckpointFormat {
                path: path.to_path_buf(),
                reason: format!("unsupported format version {}", cp.format_version),
            });
        }
        if cp.next_unscanned != cp.summary.next_unscanned
            || cp.next_unscanned < cp.query.lo
            || cp.next_unscanned > cp.query.hi + 1
        {
            return Err(Error::CheckpointFormat {
                path: path.to_path_buf(),
                reason: format!(
                    "next_unscanned {} outside the query range",
                    cp.next_unscanned
                ),
            });
        }
        Ok(Some(cp))
    }

    pub(crate) fn check_matches(&self, query: &SearchQuery, path: &Path) -> Result<()> {
        let expected = query.fingerprint();
        if self.fingerprint != expected || self.query.fingerprint() != expected {
            return Err(Error::CheckpointMismatch {
                path: path.to_path_buf(),
                expected,
                found: self.fingerprint.clone(),
            });
        }
        Ok(())
    }

    /// Writes to a sibling temporary file and renames it over `path`.
    pub fn store(&self, path: &Path) -> Result<()> {
        let tmp = temp_path(path);
        let text = serde_json::to_string_pretty(self).expect("checkpoint serializes");
        let mut file = fs::File::create(&tmp).map_err(io_err(&tmp))?;
        file.write_all(text.as_bytes()).map_err(io_err(&tmp))?;
        file.write_all(b"\n").map_err(io_err(&tmp))?;
        file.sync_all().map_err(io_err(&tmp))?;
        fs::rename(&tmp, path).map_err(io_err(path))
    }
}

fn temp_path(path: &Path) -> PathBuf {
    let mut name = path
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_default();
    name.push(".tmp");
    path.with_file_name(name)
}
