//! Content-addressed JSON cache for expensive stages.
//!
//! A file name is the SHA-256 of the stage name, its parameters, the Gram
//! hash, the monomial-ordering tag and the crate version, so any change to
//! those inputs misses the cache instead of reading stale data.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;

pub const MODULE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Inputs identifying one cached stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub stage: String,
    pub params: String,
    pub gram_hash: String,
    pub ordering: String,
    pub version: String,
}

impl CacheKey {
    pub fn new(stage: &str, params: &str, gram_hash: &str, ordering: &str) -> Self {
        CacheKey {
            stage: stage.into(),
            params: params.into(),
            gram_hash: gram_hash.into(),
            ordering: ordering.into(),
            version: MODULE_VERSION.into(),
        }
    }

    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for part in [&self.stage, &self.params, &self.gram_hash, &self.ordering, &self.version] {
            h.update(part.as_bytes());
            h.update([0u8]);
        }
        hex::encode(h.finalize())
    }
}

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    key: CacheKey,
    payload: T,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest()))
    }

    /// A hit requires the stored key to match exactly; unreadable or
    /// mismatched files count as misses.
    pub fn load<T: DeserializeOwned>(&self, key: &CacheKey) -> Option<T> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: Entry<T> = serde_json::from_str(&text).ok()?;
        (entry.key == *key).then_some(entry.payload)
    }

    pub fn store<T: Serialize>(&self, key: &CacheKey, payload: &T) -> Result<()> {
        let entry = Entry { key: key.clone(), payload };
        let tmp = self.dir.join(format!(".{}.tmp", key.digest()));
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(tmp, self.path(key))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_key_sensitivity() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let k = CacheKey::new("census", "d=6", "abc", "none");
        assert_eq!(cache.load::<Vec<i64>>(&k), None);
        cache.store(&k, &vec![1i64, 2, 3]).unwrap();
        assert_eq!(cache.load::<Vec<i64>>(&k), Some(vec![1, 2, 3]));
        let other = CacheKey::new("census", "d=6", "abd", "none");
        assert_ne!(k.digest(), other.digest());
        assert_eq!(cache.load::<Vec<i64>>(&other), None);
    }
}
