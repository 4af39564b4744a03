//! Packing file format, SVG rendering, and the extremal-configuration
//! catalog.
//!
//! A packing file is a single JSON object with `dimension`, `radius`,
//! `centers` (list of coordinate lists) and optional `metadata`. Coordinates
//! are serialized in shortest round-trip decimal form, so write-then-read is
//! the identity on values.

mod catalog;
mod svg;

pub use catalog::{catalog_store, catalog_verify, CatalogEntry, CatalogError, VerifyReport};
pub use svg::{render_svg, RenderOptions};

use crate::geometry::{GeometryError, Packing};
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::Write;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error in {path} at line {line}, column {column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid packing in {path}: {source}")]
    Invalid { path: String, source: GeometryError },
}

/// Optional descriptive fields carried alongside a stored packing.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_contacts: Option<usize>,
}

impl Metadata {
    pub fn named(name: &str) -> Self {
        Metadata {
            name: Some(name.to_string()),
            ..Metadata::default()
        }
    }

    fn is_empty(&self) -> bool {
        self.name.is_none() && self.source.is_none() && self.expected_contacts.is_none()
    }
}

/// On-disk form of a packing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingFile {
    pub dimension: usize,
    pub radius: f64,
    pub centers: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl PackingFile {
    pub fn from_packing(p: &Packing, metadata: Option<Metadata>) -> Self {
        PackingFile {
            dimension: p.dimension(),
            radius: p.radius(),
            centers: p.centers().map(|c| c.to_vec()).collect(),
            metadata: metadata.filter(|m| !m.is_empty()),
        }
    }

    pub fn into_packing(self) -> Result<Packing, GeometryError> {
        Packing::new(self.dimension, self.radius, self.centers)
    }
}

/// Reads and validates a packing file.
pub fn read_packing(path: impl AsRef<Path>) -> Result<(Packing, Option<Metadata>), FormatError> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| FormatError::Read {
        path: display.clone(),
        source,
    })?;
    let file: PackingFile = serde_json::from_str(&text).map_err(|e| FormatError::Parse {
        path: display.clone(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let metadata = file.metadata.clone();
    let packing = file.into_packing().map_err(|source| FormatError::Invalid {
        path: display,
        source,
    })?;
    Ok((packing, metadata))
}

/// Writes a packing file atomically (write to a temporary sibling, rename).
pub fn write_packing(
    path: impl AsRef<Path>,
    p: &Packing,
    metadata: Option<Metadata>,
) -> Result<(), FormatError> {
    let file = PackingFile::from_packing(p, metadata);
    let mut body = serde_json::to_string_pretty(&file).expect("packing files always serialize");
    body.push('\n');
    atomic_write(path.as_ref(), body.as_bytes())
}

/// Atomically writes arbitrary text (write to a temporary sibling, rename).
pub fn write_text(path: impl AsRef<Path>, text: &str) -> Result<(), FormatError> {
    atomic_write(path.as_ref(), text.as_bytes())
}

pub(crate) fn atomic_write(path: &Path, bytes: &[u8]) -> Result<(), FormatError> {
    let display = path.display().to_string();
    let tmp = path.with_extension("tmp");
    let wrap = |source: std::io::Error| FormatError::Write {
        path: display.clone(),
        source,
    };
    let mut out = fs::File::create(&tmp).map_err(wrap)?;
    out.write_all(bytes).map_err(wrap)?;
    out.sync_all().map_err(wrap)?;
    drop(out);
    fs::rename(&tmp, path).map_err(wrap)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::grid_packing;

    fn tmpdir() -> std::path::PathBuf {
        let dir = std::env::temp_dir().join(format!(
            "tspack-io-{}-{:?}",
            std::process::id(),
            std::thread::current().id()
        ));
        fs::create_dir_all(&dir).unwrap();
        dir
    }

    #[test]
    fn minimal_file_round_trip() {
        let dir = tmpdir();
        let path = dir.join("two.json");
        fs::write(
            &path,
            r#"{"dimension": 2, "radius": 0.5, "centers": [[0, 0], [1, 0]]}"#,
        )
        .unwrap();
        let (p, metadata) = read_packing(&path).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(metadata, None);
    }

    #[test]
    fn overlap_reported_with_pair() {
        let dir = tmpdir();
        let path = dir.join("overlap.json");
        fs::write(
            &path,
            r#"{"dimension": 2, "radius": 0.5, "centers": [[0, 0], [0.5, 0]]}"#,
        )
        .unwrap();
        // Construction accepts the centers; validation names the pair.
        let (p, _) = read_packing(&path).unwrap();
        match p.validate(&crate::tolerance::Tolerance::default()) {
            Err(GeometryError::Overlap { i: 0, j: 1, .. }) => {}
            other => panic!("expected overlap, got {other:?}"),
        }
    }

    #[test]
    fn ragged_centers_are_invalid() {
        let dir = tmpdir();
        let path = dir.join("ragged.json");
        fs::write(
            &path,
            r#"{"dimension": 2, "radius": 0.5, "centers": [[0, 0], [1]]}"#,
        )
        .unwrap();
        assert!(matches!(
            read_packing(&path),
            Err(FormatError::Invalid { .. })
        ));
    }

    #[test]
    fn syntax_error_carries_location() {
        let dir = tmpdir();
        let path = dir.join("broken.json");
        fs::write(&path, "{\n  \"dimension\": 2,\n  oops\n}").unwrap();
        match read_packing(&path) {
            Err(FormatError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn write_read_identity_on_bits() {
        let dir = tmpdir();
        let path = dir.join("bits.json");
        let p = Packing::new(
            2,
            0.5,
            vec![
                vec![0.1 + 0.2, -1.0 / 3.0],
                vec![3.0f64.sqrt(), 2.0f64.powi(-40)],
            ],
        )
        .unwrap();
        write_packing(&path, &p, Some(Metadata::named("bits"))).unwrap();
        let (q, metadata) = read_packing(&path).unwrap();
        assert_eq!(metadata.unwrap().name.as_deref(), Some("bits"));
        for (a, b) in p.centers().zip(q.centers()) {
            for (x, y) in a.iter().zip(b) {
                assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }

    #[test]
    fn grid_survives_round_trip() {
        let dir = tmpdir();
        let path = dir.join("grid.json");
        let p = grid_packing(3, 2).unwrap();
        write_packing(&path, &p, None).unwrap();
        let (q, _) = read_packing(&path).unwrap();
        assert_eq!(p, q);
    }
}
