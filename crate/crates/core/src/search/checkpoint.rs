//! Versioned JSON checkpoints, written by atomic replace.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::SearchMode;
use crate::error::{Error, Result};

pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub m: u32,
    pub mode: SearchMode,
    pub block_size: u64,
    pub completed_blocks: BTreeSet<u64>,
    pub partial_hits: BTreeSet<String>,
    pub candidates_examined: u64,
}

impl Checkpoint {
    pub fn new(m: u32, mode: SearchMode, block_size: u64) -> Self {
        Checkpoint {
            version: CHECKPOINT_VERSION,
            m,
            mode,
            block_size,
            completed_blocks: BTreeSet::new(),
            partial_hits: BTreeSet::new(),
            candidates_examined: 0,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
        let found = value
            .get("version")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::Checkpoint(format!("{}: missing version", path.display())))?;
        if found != u64::from(CHECKPOINT_VERSION) {
            return Err(Error::CheckpointVersion { found, expected: CHECKPOINT_VERSION });
        }
        serde_json::from_value(value).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))
    }

    /// Writes to a sibling temporary file, then renames over `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            serde_json::to_writer_pretty(&mut f, self).map_err(|e| Error::Checkpoint(e.to_string()))?;
            f.write_all(b"\n")?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Errors unless this checkpoint belongs to the given search.
    pub fn ensure_matches(&self, m: u32, mode: SearchMode, block_size: u64) -> Result<()> {
        if (self.m, self.mode, self.block_size) != (m, mode, block_size) {
            return Err(Error::Checkpoint(format!(
                "checkpoint is for m={} mode={} block_size={}, not m={m} mode={mode} block_size={block_size}",
                self.m, self.mode, self.block_size
            )));
        }
        Ok(())
    }
}
