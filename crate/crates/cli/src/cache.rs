//! Advisory cache of invariant dimensions keyed by (q, m, group, degree).
//!
//! Only the `dims` listing reads from it; verdict-bearing checks always
//! recompute and merely write their dimensions back.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use modinv_core::GroupKind;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Debug, Clone, Default, PartialEq, Eq)]
struct CacheFile {
    dims: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, Default)]
pub struct DimCache {
    path: Option<PathBuf>,
    dims: BTreeMap<String, usize>,
    dirty: bool,
}

fn key(q: u32, m: usize, group: GroupKind, d: usize) -> String {
    format!("q={q},m={m},group={},d={d}", group.name())
}

impl DimCache {
    /// A cache with nowhere to persist.
    pub fn disabled() -> DimCache {
        DimCache::default()
    }

    /// Loads `path`; a missing file starts empty and an unreadable one is
    /// ignored with a warning on stderr.
    pub fn load(path: &Path) -> DimCache {
        let mut cache = DimCache {
            path: Some(path.to_path_buf()),
            ..DimCache::default()
        };
        match fs::read_to_string(path) {
            Ok(text) => match serde_json::from_str::<CacheFile>(&text) {
                Ok(file) => cache.dims = file.dims,
                Err(e) => eprintln!("warning: ignoring corrupt cache {}: {e}", path.display()),
            },
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => eprintln!("warning: cannot read cache {}: {e}", path.display()),
        }
        cache
    }

    pub fn get(&self, q: u32, m: usize, group: GroupKind, d: usize) -> Option<usize> {
        self.dims.get(&key(q, m, group, d)).copied()
    }

    pub fn put(&mut self, q: u32, m: usize, group: GroupKind, d: usize, dim: usize) {
        if self.dims.insert(key(q, m, group, d), dim) != Some(dim) {
            self.dirty = true;
        }
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Writes the cache back if anything changed.
    pub fn save(&mut self) -> std::io::Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        if !self.dirty {
            return Ok(());
        }
        let file = CacheFile { dims: self.dims.clone() };
        fs::write(path, serde_json::to_string_pretty(&file).expect("cache serializes"))?;
        self.dirty = false;
        Ok(())
    }
}
