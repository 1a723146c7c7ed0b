//! On-disk cache of Lawrence generator matrices, one JSON file per
//! `(n, m, i, ±)`.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{LaurentPoly, RingMatrix};
use crate::error::{Error, Result};

use super::rank;

/// Identifies the generator formula; bump when the matrices change.
pub const FORMULA_ID: &str = "lawrence-multifork/gaussian(-d)/basis=lex-desc/1";

pub const BASIS_ORDER: &str = "lex-desc";

pub const CACHE_ENV: &str = "LOOPJONES_CACHE";

pub fn formula_version() -> String {
    hex::encode(Sha256::digest(FORMULA_ID.as_bytes()))[..16].to_string()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Built,
    /// The file existed but failed validation and was replaced.
    Rebuilt(String),
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    n: usize,
    m: usize,
    i: usize,
    inverse: bool,
    basis_order: String,
    version: String,
    hash: String,
    entries: Vec<(usize, usize, String)>,
}

fn entries_hash(entries: &[(usize, usize, String)]) -> String {
    let mut hasher = Sha256::new();
    for (r, c, v) in entries {
        hasher.update(format!("{r} {c} {v}\n").as_bytes());
    }
    hex::encode(hasher.finalize())
}

#[derive(Clone, Debug)]
pub struct MatrixCache {
    dir: PathBuf,
}

static TEMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl MatrixCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, n: usize, m: usize, i: usize, inverse: bool) -> PathBuf {
        let sign = if inverse { "inv" } else { "pos" };
        self.dir.join(format!("L_n{n}_m{m}_i{i}_{sign}.json"))
    }

    /// Reads and validates a cached matrix. `Ok(None)` when absent;
    /// `Err` with a reason when present but unusable.
    pub fn load(&self, n: usize, m: usize, i: usize, inverse: bool) -> std::result::Result<Option<RingMatrix>, String> {
        let path = self.path(n, m, i, inverse);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.to_string()),
        };
        let file: CacheFile = serde_json::from_str(&text).map_err(|e| format!("bad json: {e}"))?;
        if (file.n, file.m, file.i, file.inverse) != (n, m, i, inverse) {
            return Err("header does not match the requested matrix".into());
        }
        if file.basis_order != BASIS_ORDER || file.version != formula_version() {
            return Err("stale formula version or basis order".into());
        }
        if entries_hash(&file.entries) != file.hash {
            return Err("content hash mismatch".into());
        }
        let dim = rank(n, m);
        let mut mat = RingMatrix::zeros(dim, dim);
        for (r, c, text) in &file.entries {
            if *r >= dim || *c >= dim {
                return Err(format!("entry ({r}, {c}) outside a {dim}x{dim} matrix"));
            }
            let v: LaurentPoly = text.parse().map_err(|e: Error| e.to_string())?;
            mat.set(*r, *c, v);
        }
        Ok(Some(mat.with_degbounds()))
    }

    /// Writes through a temporary file and an atomic rename.
    pub fn store(&self, n: usize, m: usize, i: usize, inverse: bool, mat: &RingMatrix) -> Result<()> {
        let entries: Vec<(usize, usize, String)> =
            mat.entries().map(|(r, c, v)| (r, c, v.to_string())).collect();
        let file = CacheFile {
            n,
            m,
            i,
            inverse,
            basis_order: BASIS_ORDER.into(),
            version: formula_version(),
            hash: entries_hash(&entries),
            entries,
        };
        let path = self.path(n, m, i, inverse);
        let tmp = self.dir.join(format!(
            ".{}.{}.{}.tmp",
            path.file_name().and_then(|s| s.to_str()).unwrap_or("entry"),
            std::process::id(),
            TEMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, serde_json::to_vec(&file)?)?;
        fs::rename(&tmp, &path).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })?;
        Ok(())
    }

    pub fn get_or_build<F>(
        &self,
        n: usize,
        m: usize,
        i: usize,
        inverse: bool,
        build: F,
    ) -> Result<(RingMatrix, CacheOutcome)>
    where
        F: FnOnce() -> Result<RingMatrix>,
    {
        let outcome = match self.load(n, m, i, inverse) {
            Ok(Some(mat)) => return Ok((mat, CacheOutcome::Hit)),
            Ok(None) => CacheOutcome::Built,
            Err(reason) => CacheOutcome::Rebuilt(reason),
        };
        let mat = build()?;
        self.store(n, m, i, inverse, &mat)?;
        Ok((mat, outcome))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lawrence::lawrence_generator;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = MatrixCache::new(dir.path()).unwrap();
        let build = || lawrence_generator(3, 2, 1);
        let (a, first) = cache.get_or_build(3, 2, 1, false, build).unwrap();
        assert_eq!(first, CacheOutcome::Built);
        let (b, second) = cache.get_or_build(3, 2, 1, false, build).unwrap();
        assert_eq!(second, CacheOutcome::Hit);
        assert_eq!(a, b);

        let path = cache.path(3, 2, 1, false);
        let text = fs::read_to_string(&path).unwrap().replacen("x", "d", 1);
        fs::write(&path, text).unwrap();
        let (c, third) = cache.get_or_build(3, 2, 1, false, build).unwrap();
        assert!(matches!(third, CacheOutcome::Rebuilt(_)));
        assert_eq!(a, c);

        fs::write(&path, "{not json").unwrap();
        let (_, fourth) = cache.get_or_build(3, 2, 1, false, build).unwrap();
        assert!(matches!(fourth, CacheOutcome::Rebuilt(_)));
        assert_eq!(cache.get_or_build(3, 2, 1, false, build).unwrap().1, CacheOutcome::Hit);
    }
}
