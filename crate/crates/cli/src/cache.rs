//! Content-addressed on-disk cache for result documents.
//!
//! The key hashes the job together with the tool version, so a version bump
//! never serves stale documents.  Entries are whole serialized documents;
//! unreadable or mismatched files are treated as misses and overwritten.
//! Writes go to a temporary file in the same directory followed by a rename,
//! so concurrent writers never expose half-written entries.

use crate::doc::{ResultDocument, SCHEMA};
use crate::run::{JobSpec, VERSION};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

/// Resolve the cache directory: explicit flag, then `MMR_CACHE`, then a
/// platform default under the user cache directory.
pub fn resolve_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Ok(env) = std::env::var("MMR_CACHE") {
        if !env.is_empty() {
            return PathBuf::from(env);
        }
    }
    if let Ok(xdg) = std::env::var("XDG_CACHE_HOME") {
        if !xdg.is_empty() {
            return Path::new(&xdg).join("mmr");
        }
    }
    if let Ok(home) = std::env::var("HOME") {
        if !home.is_empty() {
            return Path::new(&home).join(".cache").join("mmr");
        }
    }
    PathBuf::from(".mmr-cache")
}

/// Content hash of the job and version.
pub fn key(job: &JobSpec) -> String {
    let mut h = Sha256::new();
    h.update(format!(
        "schema={SCHEMA};version={VERSION};braid={};strands={};alpha={:?};h_order={};lines={};cross_check={}",
        job.braid, job.strands, job.alpha, job.h_order, job.lines, job.cross_check
    ));
    let digest = h.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn entry_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// Look up a document; any unreadable or non-matching entry is a miss.
pub fn lookup(dir: &Path, job: &JobSpec) -> Option<ResultDocument> {
    let path = entry_path(dir, &key(job));
    let bytes = std::fs::read(&path).ok()?;
    let doc: ResultDocument = serde_json::from_slice(&bytes).ok()?;
    if doc.schema != SCHEMA || doc.version != VERSION {
        return None;
    }
    Some(doc)
}

/// Store a document under the job key (best effort; failures are not fatal).
pub fn store(dir: &Path, job: &JobSpec, doc: &ResultDocument) {
    if std::fs::create_dir_all(dir).is_err() {
        return;
    }
    let path = entry_path(dir, &key(job));
    let tmp = dir.join(format!(
        ".{}.tmp-{}",
        key(job),
        std::process::id()
    ));
    let Ok(bytes) = serde_json::to_vec_pretty(doc) else {
        return;
    };
    if std::fs::write(&tmp, bytes).is_ok() {
        let _ = std::fs::rename(&tmp, &path);
    }
}
