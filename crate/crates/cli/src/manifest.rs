//! Tab-separated corpus manifests.
//!
//! One row per recording under the exact header `word\tspeaker\tpath`.
//! `(word, speaker)` pairs must be unique, labels stick to
//! `[A-Za-z0-9_-]` (they become file-name components), and every path must
//! resolve at load time; relative paths are taken relative to the manifest's
//! own directory.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};
use crate::util::atomic_write;

pub const HEADER: &str = "word\tspeaker\tpath";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestRow {
    pub word: String,
    pub speaker: String,
    /// Resolved path, ready to open.
    pub path: PathBuf,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Manifest {
    rows: Vec<ManifestRow>,
}

fn valid_label(label: &str) -> bool {
    !label.is_empty()
        && label
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

impl Manifest {
    pub fn rows(&self) -> &[ManifestRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Parse and validate a manifest file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::input(format!("cannot read manifest {}: {e}", path.display()))
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        let mut lines = text.lines().enumerate();

        match lines.next() {
            Some((_, header)) if header == HEADER => {}
            Some((_, header)) => {
                return Err(CliError::input(format!(
                    "manifest {}: expected header {HEADER:?}, found {header:?}",
                    path.display()
                )))
            }
            None => {
                return Err(CliError::input(format!(
                    "manifest {} is empty",
                    path.display()
                )))
            }
        }

        let mut rows = Vec::new();
        let mut seen = HashSet::new();
        for (idx, line) in lines {
            let line_no = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let [word, speaker, raw_path] = fields[..] else {
                return Err(CliError::input(format!(
                    "manifest {} row {line_no}: expected 3 tab-separated fields, found {}",
                    path.display(),
                    fields.len()
                )));
            };
            for (name, label) in [("word", word), ("speaker", speaker)] {
                if !valid_label(label) {
                    return Err(CliError::input(format!(
                        "manifest {} row {line_no}: {name} {label:?} must be nonempty [A-Za-z0-9_-]",
                        path.display()
                    )));
                }
            }
            if raw_path.is_empty() {
                return Err(CliError::input(format!(
                    "manifest {} row {line_no}: empty path",
                    path.display()
                )));
            }
            if !seen.insert((word.to_string(), speaker.to_string())) {
                return Err(CliError::input(format!(
                    "manifest {} row {line_no}: duplicate (word, speaker) pair ({word}, {speaker})",
                    path.display()
                )));
            }
            let resolved = if Path::new(raw_path).is_absolute() {
                PathBuf::from(raw_path)
            } else {
                base.join(raw_path)
            };
            if !resolved.exists() {
                return Err(CliError::input(format!(
                    "manifest {} row {line_no} ({word}, {speaker}): file not found: {}",
                    path.display(),
                    resolved.display()
                )));
            }
            rows.push(ManifestRow {
                word: word.to_string(),
                speaker: speaker.to_string(),
                path: resolved,
            });
        }

        if rows.is_empty() {
            return Err(CliError::input(format!(
                "manifest {} has no rows",
                path.display()
            )));
        }
        Ok(Self { rows })
    }

    /// Keep only rows whose speaker is in `speakers`; errors if that leaves
    /// nothing.
    pub fn filter_speakers(&self, speakers: &[String]) -> Result<Self> {
        let rows: Vec<ManifestRow> = self
            .rows
            .iter()
            .filter(|r| speakers.contains(&r.speaker))
            .cloned()
            .collect();
        if rows.is_empty() {
            return Err(CliError::input(format!(
                "no manifest rows match speakers {speakers:?}"
            )));
        }
        Ok(Self { rows })
    }
}

/// Write a manifest with the given relative path strings.
pub fn write_manifest(path: &Path, rows: &[(String, String, String)]) -> Result<()> {
    let mut text = String::from(HEADER);
    text.push('\n');
    for (word, speaker, rel_path) in rows {
        text.push_str(&format!("{word}\t{speaker}\t{rel_path}\n"));
    }
    atomic_write(path, text.as_bytes())
}
