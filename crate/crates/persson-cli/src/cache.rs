//! Optional disk cache for tiling enumerations, keyed by a hash of (d, n, b).
//!
//! The cache directory is taken from the `PERSSON_CACHE_DIR` environment
//! variable; without it, no caching happens. Entries store the weight vector
//! verbatim, so a hash collision is detected on load rather than trusted.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use persson::polytope::{TilingClass, TilingJson, Weight};

pub const CACHE_ENV: &str = "PERSSON_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema: String,
    d: usize,
    n: usize,
    b: Vec<String>,
    classes: Vec<CacheClass>,
}

#[derive(Serialize, Deserialize)]
struct CacheClass {
    orbit: u64,
    tiling: TilingJson,
}

fn weight_strings(b: &Weight) -> Vec<String> {
    b.entries().iter().map(|r| r.to_string()).collect()
}

/// FNV-1a over the canonical key string — stable across platforms and runs.
fn key_hash(d: usize, n: usize, b: &Weight) -> u64 {
    let key = format!("{d}|{n}|{}", weight_strings(b).join(","));
    let mut h: u64 = 0xcbf29ce484222325;
    for byte in key.bytes() {
        h ^= u64::from(byte);
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn cache_path(d: usize, n: usize, b: &Weight) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    if dir.is_empty() {
        return None;
    }
    Some(PathBuf::from(dir).join(format!("tilings-{:016x}.json", key_hash(d, n, b))))
}

/// Cached classes for (d, n, b), if present and matching.
pub fn load(d: usize, n: usize, b: &Weight) -> Option<Vec<TilingClass>> {
    let path = cache_path(d, n, b)?;
    let text = std::fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    if file.schema != "tilings-cache/1"
        || file.d != d
        || file.n != n
        || file.b != weight_strings(b)
    {
        return None;
    }
    file.classes
        .into_iter()
        .map(|c| {
            c.tiling
                .into_tiling()
                .ok()
                .map(|t| TilingClass { representative: t, orbit_size: c.orbit })
        })
        .collect()
}

/// Write-through; failures are silent (the cache is an optimization only).
pub fn store(d: usize, n: usize, b: &Weight, classes: &[TilingClass]) {
    let Some(path) = cache_path(d, n, b) else { return };
    if let Some(dir) = path.parent() {
        let _ = std::fs::create_dir_all(dir);
    }
    let file = CacheFile {
        schema: "tilings-cache/1".into(),
        d,
        n,
        b: weight_strings(b),
        classes: classes
            .iter()
            .map(|c| CacheClass {
                orbit: c.orbit_size,
                tiling: TilingJson::from(&c.representative),
            })
            .collect(),
    };
    let _ = std::fs::write(path, serde_json::to_string(&file).expect("serializable"));
}
