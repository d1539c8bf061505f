//! On-disk cache of decomposition matrices.
//!
//! One JSON file per (block, truncation, sign). Each file carries a
//! `format_version`; a file with any other version, or one that fails to
//! parse, is treated as a miss and overwritten. Timestamps are never
//! consulted.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use qfock::canonical::{DecompMatrix, Sign};
use qfock::BlockSpec;
use serde_json::{json, Value};

pub const FORMAT_VERSION: u64 = 1;

/// Environment variable that overrides the cache directory.
pub const CACHE_ENV: &str = "QFOCK_CACHE_DIR";

pub struct DiskCache {
    dir: Option<PathBuf>,
}

impl DiskCache {
    /// `dir = None` disables caching.
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir }
    }

    /// `$QFOCK_CACHE_DIR`, else `$XDG_CACHE_HOME/qfock`, else `~/.cache/qfock`.
    pub fn default_dir() -> Option<PathBuf> {
        if let Some(d) = std::env::var_os(CACHE_ENV) {
            return Some(PathBuf::from(d));
        }
        if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
            return Some(Path::new(&d).join("qfock"));
        }
        std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache").join("qfock"))
    }

    fn path(&self, spec: &BlockSpec, r: usize, sign: Sign) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{}-r{r}-{sign}.json", spec.key())))
    }

    pub fn load(&self, spec: &BlockSpec, r: usize, sign: Sign) -> Option<DecompMatrix> {
        let text = fs::read_to_string(self.path(spec, r, sign)?).ok()?;
        let v: Value = serde_json::from_str(&text).ok()?;
        if v.get("format_version").and_then(Value::as_u64) != Some(FORMAT_VERSION) {
            return None;
        }
        if v.get("r").and_then(Value::as_u64) != Some(r as u64) {
            return None;
        }
        let m = DecompMatrix::from_json(v.get("matrix")?).ok()?;
        (m.spec == *spec && m.sign == sign).then_some(m)
    }

    pub fn store(&self, m: &DecompMatrix, r: usize) -> Result<()> {
        let Some(path) = self.path(&m.spec, r, m.sign) else {
            return Ok(());
        };
        let dir = path.parent().expect("cache file has a parent");
        fs::create_dir_all(dir)
            .with_context(|| format!("creating cache directory {}", dir.display()))?;
        let body = json!({
            "format_version": FORMAT_VERSION,
            "key": m.spec.key(),
            "r": r,
            "matrix": m.to_json(),
        });
        // Write then rename so that readers never see a partial file.
        let tmp = path.with_extension(format!("json.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&body)?)
            .with_context(|| format!("writing {}", tmp.display()))?;
        fs::rename(&tmp, &path).with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }
}
