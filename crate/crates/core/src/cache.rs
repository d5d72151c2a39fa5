//! File-backed store of restriction vectors for one prime.
//!
//! The file is a single JSON object with a versioned header. A file written
//! under a different version tag is rejected, never migrated.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use crate::error::{domain, Error, Result};
use crate::partition::Partition;
use crate::restriction::{restrict_sylow, RestrictionVector};

pub const CACHE_FORMAT: &str = "sylow-branch-cache";
pub const CACHE_VERSION: &str = "1.0";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheFile {
    pub p: usize,
    /// Largest tower height among the stored vectors.
    pub max_k: u32,
    records: BTreeMap<String, RestrictionVector>,
}

impl CacheFile {
    pub fn new(p: usize) -> Self {
        CacheFile { p, max_k: 0, records: BTreeMap::new() }
    }

    /// Canonical record key, e.g. `p=2:5,3`.
    pub fn key(p: usize, lambda: &Partition) -> String {
        format!("p={p}:{lambda}")
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, lambda: &Partition) -> Option<&RestrictionVector> {
        self.records.get(&CacheFile::key(self.p, lambda))
    }

    pub fn insert(&mut self, v: RestrictionVector) -> Result<()> {
        if v.p != self.p {
            return domain(format!("cache holds p = {} vectors, got p = {}", self.p, v.p));
        }
        let top = v.shape.heights.iter().copied().max().unwrap_or(0);
        self.max_k = self.max_k.max(top);
        self.records.insert(CacheFile::key(v.p, &v.lambda), v);
        Ok(())
    }

    /// Returns the stored vector, computing and storing it on a miss.
    pub fn get_or_compute(&mut self, lambda: &Partition) -> Result<RestrictionVector> {
        if let Some(v) = self.get(lambda) {
            return Ok(v.clone());
        }
        let v = restrict_sylow(lambda, self.p)?;
        self.insert(v.clone())?;
        Ok(v)
    }

    pub fn to_json(&self) -> Value {
        let records: Vec<Value> =
            self.records.iter().map(|(key, v)| json!({ "key": key, "vector": v.to_json() })).collect();
        json!({
            "header": { "format": CACHE_FORMAT, "version": CACHE_VERSION, "p": self.p, "max_k": self.max_k },
            "records": records,
        })
    }

    pub fn from_json(value: &Value) -> Result<CacheFile> {
        let bad = |what: &str| Error::Parse(format!("cache file: {what}"));
        let header = &value["header"];
        if header["format"].as_str() != Some(CACHE_FORMAT) {
            return Err(bad("not a sylow-branch cache"));
        }
        match header["version"].as_str() {
            Some(CACHE_VERSION) => {}
            other => {
                return Err(Error::StaleCache(format!(
                    "version {} does not match {CACHE_VERSION}",
                    other.unwrap_or("<missing>")
                )))
            }
        }
        let p = header["p"].as_u64().ok_or_else(|| bad("missing `p`"))? as usize;
        let max_k = header["max_k"].as_u64().ok_or_else(|| bad("missing `max_k`"))? as u32;
        let mut cache = CacheFile::new(p);
        for r in value["records"].as_array().ok_or_else(|| bad("missing `records`"))? {
            let v = RestrictionVector::from_json(&r["vector"])?;
            let key = r["key"].as_str().ok_or_else(|| bad("record without `key`"))?;
            if key != CacheFile::key(v.p, &v.lambda) {
                return Err(bad(&format!("record key `{key}` does not match its vector")));
            }
            cache.insert(v)?;
        }
        if cache.max_k > max_k {
            return Err(bad("a record exceeds the header's max_k"));
        }
        cache.max_k = max_k;
        Ok(cache)
    }

    /// Loads `path`, or starts empty when it does not exist.
    pub fn load_or_new(path: &Path, p: usize) -> Result<CacheFile> {
        if !path.exists() {
            return Ok(CacheFile::new(p));
        }
        let text = fs::read_to_string(path)?;
        let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("cache file: {e}")))?;
        let cache = CacheFile::from_json(&value)?;
        if cache.p != p {
            return domain(format!("cache {} holds p = {}, requested p = {p}", path.display(), cache.p));
        }
        Ok(cache)
    }

    /// Writes through a temporary sibling so a crash never leaves a torn file.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string(&self.to_json()).expect("cache serializes");
        fs::write(&tmp, text + "\n")?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn reload_matches_recompute() {
        let mut c = CacheFile::new(2);
        for l in [part![5, 3], part![3, 3, 3], part![4, 2, 1, 1, 1]] {
            c.get_or_compute(&l).unwrap();
        }
        assert_eq!(c.max_k, 3);
        let back = CacheFile::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        for l in [part![5, 3], part![3, 3, 3]] {
            assert_eq!(back.get(&l).unwrap(), &restrict_sylow(&l, 2).unwrap());
        }
    }

    #[test]
    fn stale_version_rejected() {
        let mut v = CacheFile::new(3).to_json();
        v["header"]["version"] = json!("0.9");
        assert!(matches!(CacheFile::from_json(&v), Err(Error::StaleCache(_))));
        v["header"]["format"] = json!("other");
        assert!(matches!(CacheFile::from_json(&v), Err(Error::Parse(_))));
    }

    #[test]
    fn prime_mismatch() {
        let mut c = CacheFile::new(3);
        assert!(c.insert(restrict_sylow(&part![2, 2], 2).unwrap()).is_err());
    }
}
