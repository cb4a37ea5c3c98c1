//! Content-addressed store of Tutte polynomials on disk.
//!
//! The key is the SHA-256 of the canonical matrix bytes; the value is the
//! polynomial's JSON. Entries are written to a temporary file and renamed
//! into place, so concurrent writers of the same key are harmless.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use sha2::{Digest, Sha256};
use starconfig::tutte::matroid_cache_key;
use starconfig::{BivarPoly, VectorMatroid};

#[derive(Debug, Clone)]
pub struct TutteCache {
    dir: PathBuf,
}

impl TutteCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TutteCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, m: &VectorMatroid) -> PathBuf {
        let digest = Sha256::digest(matroid_cache_key(m));
        self.dir.join(format!("tutte-{}.json", hex::encode(digest)))
    }

    /// A missing or unreadable entry is a miss.
    pub fn get(&self, m: &VectorMatroid) -> Option<BivarPoly> {
        let text = fs::read_to_string(self.path_for(m)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn put(&self, m: &VectorMatroid, t: &BivarPoly) -> Result<()> {
        fs::create_dir_all(&self.dir).with_context(|| format!("creating {}", self.dir.display()))?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(t)?.as_bytes())?;
        let target = self.path_for(m);
        tmp.persist(&target)
            .with_context(|| format!("writing {}", target.display()))?;
        Ok(())
    }

    /// Cached value, or `compute` stored for next time.
    pub fn get_or_compute(&self, m: &VectorMatroid, compute: impl FnOnce() -> BivarPoly) -> Result<(BivarPoly, bool)> {
        if let Some(t) = self.get(m) {
            return Ok((t, true));
        }
        let t = compute();
        self.put(m, &t)?;
        Ok((t, false))
    }
}
