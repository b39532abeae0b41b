use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;
use zaran_core::oracle::OracleConfig;

pub const MAX_SIDE_VAR: &str = "ZARAN_ORACLE_MAX_SIDE";
pub const MAX_K_VAR: &str = "ZARAN_ORACLE_MAX_K";

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Writes through a sibling temporary file and a rename, so readers never
/// see a partial file even with several workers in one directory.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    static SEQ: AtomicU64 = AtomicU64::new(0);
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path
        .file_name()
        .with_context(|| format!("{} has no file name", path.display()))?
        .to_string_lossy();
    let tmp = dir.join(format!(
        ".{name}.{}.{}.tmp",
        std::process::id(),
        SEQ.fetch_add(1, Ordering::Relaxed)
    ));
    let mut f = fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
    f.write_all(contents.as_bytes())?;
    f.sync_all()?;
    drop(f);
    fs::rename(&tmp, path).with_context(|| format!("renaming onto {}", path.display()))?;
    Ok(())
}

/// Writes `value` to `out`, or to stdout when `out` is `None`.
pub fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let s = to_json(value)?;
    match out {
        Some(p) => write_atomic(p, &s),
        None => {
            print!("{s}");
            Ok(())
        }
    }
}

fn env_cap(var: &str) -> Result<Option<usize>> {
    match std::env::var(var) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .with_context(|| format!("{var}={v:?} is not a non-negative integer")),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(e).with_context(|| format!("reading {var}")),
    }
}

/// Library defaults, overridden by the environment caps.
pub fn oracle_config() -> Result<OracleConfig> {
    let mut cfg = OracleConfig::default();
    if let Some(s) = env_cap(MAX_SIDE_VAR)? {
        cfg.max_side = s;
    }
    if let Some(k) = env_cap(MAX_K_VAR)? {
        cfg.max_k = k;
    }
    Ok(cfg)
}

/// `dir/a.json` with `suffix = "cert"` becomes `dir/a.cert.json`.
pub fn sibling(path: &Path, dir: Option<&Path>, suffix: &str) -> PathBuf {
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    let name = format!("{stem}.{suffix}.json");
    match dir {
        Some(d) => d.join(name),
        None => path.with_file_name(name),
    }
}
