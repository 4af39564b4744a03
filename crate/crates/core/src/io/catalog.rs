//! Catalog persistence for extremal and witness configurations: one packing
//! file per entry, keyed by an isometry-invariant canonical hash, plus a
//! plain-text index. Stored entries can be re-verified against drift.

use crate::enumeration::classify;
use crate::geometry::{canonical_lattice_form, Packing};
use crate::io::{atomic_write, read_packing, write_packing, FormatError, Metadata};
use crate::separability::{is_ls, is_ts, LsMode, LsVerdict, TsVerdict};
use crate::tolerance::Tolerance;
use sha2::{Digest, Sha256};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog directory {0} is not usable: {1}")]
    Directory(String, std::io::Error),
    #[error("malformed index line {line} in {path}")]
    MalformedIndex { path: String, line: usize },
    #[error("hash {hash} already stored with different content ({existing})")]
    Integrity { hash: String, existing: String },
    #[error(transparent)]
    Format(#[from] FormatError),
}

/// Verdicts above this size are skipped at store time (recorded as `-`);
/// the exact planar separability decision is polynomial but not cheap.
const VERDICT_SIZE_LIMIT: usize = 64;

/// One catalog record: identity, counts, classification label and the
/// separability verdicts at store time.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub hash: String,
    pub n: usize,
    pub contacts: usize,
    pub label: String,
    pub ts_verdict: String,
    pub ls_verdict: String,
    pub timestamp: u64,
    pub file: String,
}

impl CatalogEntry {
    fn to_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.hash,
            self.n,
            self.contacts,
            self.label,
            self.ts_verdict,
            self.ls_verdict,
            self.timestamp,
            self.file
        )
    }

    fn from_line(line: &str) -> Option<CatalogEntry> {
        let mut parts = line.split('\t');
        Some(CatalogEntry {
            hash: parts.next()?.to_string(),
            n: parts.next()?.parse().ok()?,
            contacts: parts.next()?.parse().ok()?,
            label: parts.next()?.to_string(),
            ts_verdict: parts.next()?.to_string(),
            ls_verdict: parts.next()?.to_string(),
            timestamp: parts.next()?.parse().ok()?,
            file: parts.next()?.to_string(),
        })
    }
}

/// Isometry-invariant content hash. Planar packings whose centers sit on a
/// scaled integer lattice hash their canonical lattice form; everything else
/// hashes the sorted multiset of pairwise distances in units of the diameter.
pub fn canonical_hash(p: &Packing) -> String {
    let mut hasher = Sha256::new();
    let scale = 2.0 * p.radius();
    if p.dimension() == 2 {
        let lattice: Option<Vec<(i64, i64)>> = p
            .centers()
            .map(|c| {
                let x = c[0] / scale;
                let y = c[1] / scale;
                ((x - x.round()).abs() < 1e-6 && (y - y.round()).abs() < 1e-6)
                    .then(|| (x.round() as i64, y.round() as i64))
            })
            .collect();
        if let Some(points) = lattice {
            let canonical = canonical_lattice_form(&points).expect("packing is non-empty");
            hasher.update(b"lattice2\n");
            for (x, y) in canonical {
                hasher.update(x.to_le_bytes());
                hasher.update(y.to_le_bytes());
            }
            return hex(&hasher.finalize()[..16]);
        }
    }
    let n = p.len();
    let mut distances = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            distances.push((p.distance(i, j) / scale * 1e9).round() as i64);
        }
    }
    distances.sort_unstable();
    hasher.update(b"distances\n");
    hasher.update(p.dimension().to_le_bytes());
    hasher.update(n.to_le_bytes());
    for d in distances {
        hasher.update(d.to_le_bytes());
    }
    hex(&hasher.finalize()[..16])
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn index_path(dir: &Path) -> PathBuf {
    dir.join("index.tsv")
}

fn read_index(dir: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let path = index_path(dir);
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = fs::read_to_string(&path)
        .map_err(|e| CatalogError::Directory(dir.display().to_string(), e))?;
    let mut entries = Vec::new();
    for (number, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        entries.push(CatalogEntry::from_line(line).ok_or_else(|| {
            CatalogError::MalformedIndex {
                path: path.display().to_string(),
                line: number + 1,
            }
        })?);
    }
    Ok(entries)
}

fn write_index(dir: &Path, entries: &[CatalogEntry]) -> Result<(), CatalogError> {
    let mut body: String = entries
        .iter()
        .map(|e| e.to_line())
        .collect::<Vec<_>>()
        .join("\n");
    body.push('\n');
    atomic_write(&index_path(dir), body.as_bytes())?;
    Ok(())
}

fn evaluate(p: &Packing, tol: &Tolerance) -> (usize, String, String, String) {
    let contacts = p.contact_graph(tol).map(|g| g.contact_count()).unwrap_or(0);
    if p.dimension() != 2 || p.len() > VERDICT_SIZE_LIMIT {
        return (contacts, "-".into(), "-".into(), "-".into());
    }
    let ts = match is_ts(p, tol) {
        Ok(TsVerdict::Yes { .. }) => "TS_yes",
        Ok(TsVerdict::No { .. }) => "TS_no",
        Err(_) => "-",
    };
    let ls = match p.contact_graph(tol) {
        Ok(g) => match is_ls(p, &g, tol, LsMode::Exact2d) {
            Ok(LsVerdict::Yes) => "LS_yes",
            Ok(LsVerdict::No(_)) => "LS_no",
            _ => "-",
        },
        Err(_) => "-",
    };
    let label = classify(p, tol)
        .map(|c| c.label.as_str().to_string())
        .unwrap_or_else(|_| "-".into());
    (contacts, ts.into(), ls.into(), label)
}

/// Stores a packing in the catalog. Isometric duplicates are deduplicated by
/// the canonical hash; a hash that is already present with different content
/// is an integrity error.
pub fn catalog_store(
    dir: impl AsRef<Path>,
    p: &Packing,
    tol: &Tolerance,
) -> Result<CatalogEntry, CatalogError> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| CatalogError::Directory(dir.display().to_string(), e))?;
    let hash = canonical_hash(p);
    let mut entries = read_index(dir)?;
    if let Some(existing) = entries.iter().find(|e| e.hash == hash) {
        let stored = read_packing(dir.join(&existing.file))?;
        if stored.0.len() != p.len() || canonical_hash(&stored.0) != hash {
            return Err(CatalogError::Integrity {
                hash,
                existing: existing.file.clone(),
            });
        }
        return Ok(existing.clone());
    }
    let (contacts, ts_verdict, ls_verdict, label) = evaluate(p, tol);
    let file = format!("n{}_c{}_{}.json", p.len(), contacts, &hash[..12]);
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    write_packing(dir.join(&file), p, Some(Metadata::named(&hash)))?;
    let entry = CatalogEntry {
        hash,
        n: p.len(),
        contacts,
        label,
        ts_verdict,
        ls_verdict,
        timestamp,
        file,
    };
    entries.push(entry.clone());
    write_index(dir, &entries)?;
    Ok(entry)
}

/// One drifted entry found by verification.
#[derive(Debug, Clone, PartialEq)]
pub struct Drift {
    pub hash: String,
    pub file: String,
    pub details: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyReport {
    pub checked: usize,
    pub drifted: Vec<Drift>,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.drifted.is_empty()
    }
}

/// Re-runs contact counting, separability checks and hashing on every stored
/// entry and reports any record that no longer matches its index line.
pub fn catalog_verify(
    dir: impl AsRef<Path>,
    tol: &Tolerance,
) -> Result<VerifyReport, CatalogError> {
    let dir = dir.as_ref();
    let entries = read_index(dir)?;
    let mut report = VerifyReport::default();
    for entry in entries {
        report.checked += 1;
        let mut details = Vec::new();
        match read_packing(dir.join(&entry.file)) {
            Err(e) => details.push(format!("unreadable: {e}")),
            Ok((p, _)) => {
                let rehash = canonical_hash(&p);
                if rehash != entry.hash {
                    details.push(format!("hash changed: {} -> {}", entry.hash, rehash));
                }
                let (contacts, ts_verdict, ls_verdict, label) = evaluate(&p, tol);
                if p.len() != entry.n {
                    details.push(format!("n changed: {} -> {}", entry.n, p.len()));
                }
                if contacts != entry.contacts {
                    details.push(format!(
                        "contacts changed: {} -> {}",
                        entry.contacts, contacts
                    ));
                }
                if ts_verdict != entry.ts_verdict {
                    details.push(format!(
                        "TS verdict changed: {} -> {}",
                        entry.ts_verdict, ts_verdict
                    ));
                }
                if ls_verdict != entry.ls_verdict {
                    details.push(format!(
                        "LS verdict changed: {} -> {}",
                        entry.ls_verdict, ls_verdict
                    ));
                }
                if label != entry.label {
                    details.push(format!("label changed: {} -> {}", entry.label, label));
                }
            }
        }
        if !details.is_empty() {
            report.drifted.push(Drift {
                hash: entry.hash,
                file: entry.file,
                details,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{basic_polyomino, grid_packing};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn tmpdir(tag: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!(
            "tspack-catalog-{tag}-{}-{:?}",
            std::process::id(),
            std::thread::current().id()
        ));
        let _ = fs::remove_dir_all(&dir);
        fs::create_dir_all(&dir).unwrap();
        dir
    }

    #[test]
    fn store_then_verify_clean() {
        let dir = tmpdir("clean");
        let p = grid_packing(2, 3).unwrap();
        let entry = catalog_store(&dir, &p, &tol()).unwrap();
        assert_eq!(entry.n, 9);
        assert_eq!(entry.contacts, 12);
        assert_eq!(entry.ts_verdict, "TS_yes");
        assert_eq!(entry.label, "case_i");
        let report = catalog_verify(&dir, &tol()).unwrap();
        assert_eq!(report.checked, 1);
        assert!(report.is_clean());
    }

    #[test]
    fn corrupted_entry_reports_drift() {
        let dir = tmpdir("drift");
        let p = grid_packing(2, 2).unwrap();
        let entry = catalog_store(&dir, &p, &tol()).unwrap();
        let path = dir.join(&entry.file);
        let mangled = fs::read_to_string(&path).unwrap().replacen("1", "9", 1);
        fs::write(&path, mangled).unwrap();
        let report = catalog_verify(&dir, &tol()).unwrap();
        assert_eq!(report.drifted.len(), 1);
    }

    #[test]
    fn isometric_duplicates_are_deduplicated() {
        let dir = tmpdir("dedup");
        let config = basic_polyomino(7).unwrap();
        let p = config.to_packing();
        // A quarter-turn image of the same configuration.
        let rotated = Packing::new(
            2,
            0.5,
            config
                .points()
                .iter()
                .map(|&(x, y)| vec![-y as f64, x as f64])
                .collect(),
        )
        .unwrap();
        let first = catalog_store(&dir, &p, &tol()).unwrap();
        let second = catalog_store(&dir, &rotated, &tol()).unwrap();
        assert_eq!(first.hash, second.hash);
        assert_eq!(read_index(&dir).unwrap().len(), 1);
    }
}
