//! Persistent d-invariant cache: an append-only JSON-lines file, one
//! `{"orders": [...], "sign": ±1, "d": n}` record per line.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use seifert_core::seifert::OrientedSeifert;

use crate::CliError;

/// Environment variable naming the cache file.
pub const CACHE_ENV: &str = "SEIFERT_D_CACHE";

/// Default location: `$XDG_CACHE_HOME/seifert/d-cache.jsonl`, falling back
/// to `$HOME/.cache/seifert/d-cache.jsonl`.
pub fn default_path() -> Option<PathBuf> {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("seifert").join("d-cache.jsonl"))
}

/// Singular orders sorted ascending, plus the orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CacheKey {
    pub orders: Vec<BigInt>,
    pub sign: i8,
}

impl CacheKey {
    pub fn of(y: &OrientedSeifert) -> Self {
        let mut orders: Vec<BigInt> = y
            .pairs
            .iter()
            .map(|(a, _)| a.clone())
            .filter(|a| *a > BigInt::from(1))
            .collect();
        orders.sort();
        CacheKey {
            orders,
            sign: y.sign.as_i32() as i8,
        }
    }

    fn flipped(&self) -> Self {
        CacheKey {
            orders: self.orders.clone(),
            sign: -self.sign,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Line {
    #[serde(with = "seifert_core::serde_int::vec")]
    orders: Vec<BigInt>,
    sign: i8,
    d: i64,
}

pub struct DCache {
    path: PathBuf,
    entries: Mutex<HashMap<CacheKey, i64>>,
    writer: Mutex<Option<File>>,
    verify: bool,
}

impl DCache {
    /// Loads every well-formed line of `path`; a missing file is an empty
    /// cache. Conflicting lines for one key are reported as an error.
    pub fn open(path: &Path, verify: bool) -> Result<Self, CliError> {
        let mut entries = HashMap::new();
        match File::open(path) {
            Ok(f) => {
                for (i, line) in BufReader::new(f).lines().enumerate() {
                    let line = line.map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    let Ok(rec) = serde_json::from_str::<Line>(&line) else {
                        eprintln!("warning: {}:{}: skipping malformed cache line", path.display(), i + 1);
                        continue;
                    };
                    if rec.sign != 1 && rec.sign != -1 {
                        eprintln!("warning: {}:{}: skipping cache line with bad sign", path.display(), i + 1);
                        continue;
                    }
                    let key = CacheKey { orders: rec.orders, sign: rec.sign };
                    if let Some(old) = entries.insert(key.clone(), rec.d) {
                        if old != rec.d {
                            return Err(CliError::CacheMismatch(format!(
                                "{}: conflicting entries {old} and {} for {:?}",
                                path.display(),
                                rec.d,
                                key
                            )));
                        }
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(CliError::Io(format!("{}: {e}", path.display()))),
        }
        Ok(DCache {
            path: path.to_path_buf(),
            entries: Mutex::new(entries),
            writer: Mutex::new(None),
            verify,
        })
    }

    #[cfg(test)]
    fn len(&self) -> usize {
        self.entries.lock().expect("poisoned").len()
    }

    fn lookup(&self, key: &CacheKey) -> Option<i64> {
        let entries = self.entries.lock().expect("poisoned");
        entries
            .get(key)
            .copied()
            .or_else(|| entries.get(&key.flipped()).map(|d| -d))
    }

    /// Cached d, or `compute` followed by an appended record. With
    /// verification on, hits are recomputed and compared.
    pub fn get_or_compute(
        &self,
        y: &OrientedSeifert,
        compute: impl FnOnce(&OrientedSeifert) -> Result<i64, CliError>,
    ) -> Result<i64, CliError> {
        let key = CacheKey::of(y);
        if let Some(d) = self.lookup(&key) {
            if self.verify {
                let fresh = compute(y)?;
                if fresh != d {
                    return Err(CliError::CacheMismatch(format!(
                        "{}: cached d({y}) = {d}, recomputed {fresh}",
                        self.path.display()
                    )));
                }
            }
            return Ok(d);
        }
        let d = compute(y)?;
        self.insert(key, d)?;
        Ok(d)
    }

    fn insert(&self, key: CacheKey, d: i64) -> Result<(), CliError> {
        let mut writer = self.writer.lock().expect("poisoned");
        {
            let mut entries = self.entries.lock().expect("poisoned");
            if entries.contains_key(&key) {
                return Ok(());
            }
            entries.insert(key.clone(), d);
        }
        if writer.is_none() {
            if let Some(dir) = self.path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            }
            let f = OpenOptions::new()
                .create(true)
                .append(true)
                .open(&self.path)
                .map_err(|e| CliError::Io(format!("{}: {e}", self.path.display())))?;
            *writer = Some(f);
        }
        let line = serde_json::to_string(&Line {
            orders: key.orders,
            sign: key.sign,
            d,
        })
        .expect("cache line serializes");
        let f = writer.as_mut().expect("opened above");
        writeln!(f, "{line}")
            .and_then(|_| f.flush())
            .map_err(|e| CliError::Io(format!("{}: {e}", self.path.display())))
    }
}
