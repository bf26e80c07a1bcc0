//! On-disk cache of enumerations, one JSON file per `(space, m)`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::pattern::Pattern;

/// Bumped whenever the file layout or the enumeration output changes.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    format_version: u32,
    space: String,
    m: usize,
    patterns: Vec<Pattern>,
}

#[derive(Clone, Debug)]
pub struct PatternCache {
    dir: PathBuf,
}

impl PatternCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(PatternCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, space: &str, m: usize) -> PathBuf {
        let key = format!("{space}\n{m}\n{FORMAT_VERSION}");
        self.dir.join(format!("{}.json", hex::encode(Sha256::digest(key.as_bytes()))))
    }

    /// A stored enumeration, or `None` when absent, unreadable or written by
    /// another format version.
    pub fn load(&self, space: &str, m: usize) -> Option<Vec<Pattern>> {
        let text = fs::read_to_string(self.path_for(space, m)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.format_version == FORMAT_VERSION && entry.space == space && entry.m == m).then_some(entry.patterns)
    }

    pub fn store(&self, space: &str, m: usize, patterns: &[Pattern]) -> Result<()> {
        let entry = Entry { format_version: FORMAT_VERSION, space: space.to_string(), m, patterns: patterns.to_vec() };
        let path = self.path_for(space, m);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry).expect("cache entry serializes"))?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}
