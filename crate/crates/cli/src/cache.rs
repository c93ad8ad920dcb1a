//! Persistent store of canonical expansions, one JSON file per `m`.
//!
//! Each file holds the longest `J` coefficient list computed so far as exact
//! `num/den` strings, guarded by a SHA-256 digest. An entry of order `N`
//! serves every request of order `<= N`. Writes go to a temp file in the same
//! directory and are renamed into place, so readers never see a partial
//! entry; concurrent writers of the same content are last-writer-wins.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Mutex;

use hecke_core::hecke::{canonical_expansion, ExpansionSource, HeckeParameters};
use hecke_core::{CanonicalExpansion, LaurentSeries, Rational};
use log::debug;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Bump whenever the on-disk layout changes; older entries are recomputed.
pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    format_version: u32,
    m: u32,
    order: i64,
    lower: i64,
    coefficients: Vec<String>,
    sha256: String,
}

fn digest(m: u32, order: i64, lower: i64, coefficients: &[String]) -> String {
    let mut h = Sha256::new();
    h.update(format!("{CACHE_FORMAT_VERSION}\n{m}\n{order}\n{lower}\n"));
    for c in coefficients {
        h.update(c.as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

impl Entry {
    fn from_expansion(e: &CanonicalExpansion) -> Self {
        let coefficients: Vec<String> = e.j.coefficients().iter().map(Rational::to_string).collect();
        let (order, lower) = (e.j.order(), e.j.lower());
        Self {
            format_version: CACHE_FORMAT_VERSION,
            m: e.m,
            order,
            lower,
            sha256: digest(e.m, order, lower, &coefficients),
            coefficients,
        }
    }

    fn into_expansion(self, m: u32) -> Result<CanonicalExpansion, String> {
        if self.format_version != CACHE_FORMAT_VERSION {
            return Err(format!("format version {} is not {CACHE_FORMAT_VERSION}", self.format_version));
        }
        if self.m != m {
            return Err(format!("entry is for m = {}", self.m));
        }
        if self.sha256 != digest(self.m, self.order, self.lower, &self.coefficients) {
            return Err("digest mismatch".into());
        }
        let coeffs = self
            .coefficients
            .iter()
            .map(|s| Rational::from_str(s).map_err(|e| format!("bad coefficient {s:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        let j = LaurentSeries::with_order(self.lower, coeffs, self.order).map_err(|e| e.to_string())?;
        if j.lower() != -1 || j.coefficient(-1).ok() != Some(Rational::from_integer(1.into())) {
            return Err("series does not start with 1/X".into());
        }
        CanonicalExpansion::from_j(m, j).map_err(|e| e.to_string())
    }
}

/// Directory-backed [`ExpansionSource`].
#[derive(Debug)]
pub struct DiskCache {
    dir: PathBuf,
    warnings: Mutex<Vec<String>>,
}

impl DiskCache {
    pub fn open(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(Self {
            dir,
            warnings: Mutex::new(Vec::new()),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn entry_path(&self, m: u32) -> PathBuf {
        self.dir.join(format!("j-m{m}.json"))
    }

    /// Warnings gathered since the last call, for the diagnostics stream.
    pub fn take_warnings(&self) -> Vec<String> {
        std::mem::take(&mut *self.warnings.lock().expect("warnings poisoned"))
    }

    fn warn(&self, msg: String) {
        log::warn!("{msg}");
        self.warnings.lock().expect("warnings poisoned").push(msg);
    }

    /// `Ok(None)` when there is no entry, `Err` when the entry is unusable.
    fn read(&self, m: u32) -> Result<Option<CanonicalExpansion>, String> {
        let path = self.entry_path(m);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.to_string()),
        };
        let entry: Entry = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        entry.into_expansion(m).map(Some)
    }

    fn write(&self, e: &CanonicalExpansion) -> std::io::Result<()> {
        // Never replace a valid, longer entry written by a concurrent run.
        if let Ok(Some(existing)) = self.read(e.m) {
            if existing.order() >= e.order() {
                return Ok(());
            }
        }
        let body = serde_json::to_string_pretty(&Entry::from_expansion(e)).map_err(std::io::Error::other)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(body.as_bytes())?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.entry_path(e.m)).map_err(|e| e.error)?;
        Ok(())
    }

    /// The cached expansion for `m` through at least `order`, computing and
    /// persisting it if no covering entry exists.
    pub fn get_or_compute(&self, m: u32, order: i64) -> hecke_core::Result<CanonicalExpansion> {
        HeckeParameters::new(m)?;
        match self.read(m) {
            Ok(Some(hit)) if hit.order() >= order => {
                debug!("cache hit: m = {m}, order {} covers {order}", hit.order());
                return Ok(hit);
            }
            Ok(_) => {}
            Err(why) => self.warn(format!(
                "discarding corrupt cache entry {}: {why}; recomputing",
                self.entry_path(m).display()
            )),
        }
        debug!("cache miss: m = {m}, order {order}");
        let fresh = canonical_expansion(m, order.max(1))?;
        if let Err(e) = self.write(&fresh) {
            self.warn(format!("cannot write cache entry {}: {e}", self.entry_path(m).display()));
        }
        Ok(fresh)
    }
}

impl ExpansionSource for DiskCache {
    fn expansion(&self, m: u32, order: i64) -> hecke_core::Result<CanonicalExpansion> {
        self.get_or_compute(m, order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cache() -> (tempfile::TempDir, DiskCache) {
        let tmp = tempfile::tempdir().unwrap();
        let c = DiskCache::open(tmp.path().join("series")).unwrap();
        (tmp, c)
    }

    #[test]
    fn cold_then_warm_is_identical() {
        let (_tmp, c) = cache();
        let cold = c.get_or_compute(3, 16).unwrap();
        assert!(c.entry_path(3).exists());
        let warm = c.get_or_compute(3, 16).unwrap();
        assert_eq!(cold, warm);
        assert_eq!(cold, canonical_expansion(3, 16).unwrap());
        assert!(c.take_warnings().is_empty());
    }

    #[test]
    fn longer_entry_serves_shorter_request() {
        let (_tmp, c) = cache();
        let long = c.get_or_compute(3, 16).unwrap();
        let short = c.get_or_compute(3, 8).unwrap();
        assert_eq!(short.truncate(8).unwrap(), long.truncate(8).unwrap());
        assert_eq!(short.truncate(8).unwrap(), canonical_expansion(3, 8).unwrap());
        // The shorter request must not shrink the stored entry.
        assert_eq!(c.read(3).unwrap().unwrap().order(), 16);
    }

    #[test]
    fn shorter_entry_is_extended() {
        let (_tmp, c) = cache();
        c.get_or_compute(5, 4).unwrap();
        let e = c.get_or_compute(5, 10).unwrap();
        assert_eq!(e.order(), 10);
        assert_eq!(c.read(5).unwrap().unwrap().order(), 10);
    }

    #[test]
    fn tampered_payload_is_recomputed() {
        let (_tmp, c) = cache();
        let cold = c.get_or_compute(3, 8).unwrap();
        let path = c.entry_path(3);
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, text.replacen("\"31/72\"", "\"32/72\"", 1)).unwrap();
        let healed = c.get_or_compute(3, 8).unwrap();
        assert_eq!(healed, cold);
        let warnings = c.take_warnings();
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].contains("digest mismatch"));
        // The overwrite is valid again.
        assert_eq!(c.read(3).unwrap().unwrap(), cold);
    }

    #[test]
    fn garbage_and_foreign_entries_are_recomputed() {
        let (_tmp, c) = cache();
        std::fs::write(c.entry_path(4), "not json").unwrap();
        assert_eq!(c.get_or_compute(4, 3).unwrap(), canonical_expansion(4, 3).unwrap());
        let five = std::fs::read_to_string(c.entry_path(4)).unwrap();
        std::fs::write(c.entry_path(6), five).unwrap();
        assert_eq!(c.get_or_compute(6, 3).unwrap(), canonical_expansion(6, 3).unwrap());
        assert_eq!(c.take_warnings().len(), 2);
    }

    #[test]
    fn rejects_small_m() {
        let (_tmp, c) = cache();
        assert!(c.get_or_compute(2, 4).is_err());
        assert!(!c.entry_path(2).exists());
    }

    #[test]
    fn entry_file_is_exact_text() {
        let (_tmp, c) = cache();
        c.get_or_compute(3, 1).unwrap();
        let entry: Entry = serde_json::from_str(&std::fs::read_to_string(c.entry_path(3)).unwrap()).unwrap();
        assert_eq!(entry.lower, -1);
        assert_eq!(entry.order, 1);
        assert_eq!(entry.coefficients[..2], ["1".to_string(), "31/72".to_string()]);
    }
}
