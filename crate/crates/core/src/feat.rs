//! FEATv1: plain-text feature file format.
//!
//! Layout, byte for byte:
//!
//! ```text
//! # optional comment lines, each starting with '#'
//! FEAT 1 <T> <k>
//! <row 0: k decimal floats, single-space separated>
//! ...
//! <row T-1>
//! ```
//!
//! Comments may only appear before the header. A comment of the form
//! `# provenance: <label>` carries the matrix provenance; writers emit it
//! whenever the label is nonempty. Floats are written in Rust's shortest
//! round-trip decimal form, so write-then-read reproduces every value
//! bit-exactly. Lines end with `\n`. The plain-text form is deliberate: it
//! diffs cleanly across implementations and languages.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::frontend::FeatureMatrix;
use crate::num::Scalar;

const MAGIC: &str = "FEAT";
const VERSION: &str = "1";
const PROVENANCE_PREFIX: &str = "# provenance: ";

/// Serialize a matrix, with optional extra comment lines ahead of the header.
pub fn write_to<W: Write, S: Scalar>(
    mut out: W,
    matrix: &FeatureMatrix<S>,
    comments: &[String],
) -> std::io::Result<()> {
    for comment in comments {
        writeln!(out, "# {comment}")?;
    }
    if !matrix.provenance().is_empty() {
        writeln!(out, "{PROVENANCE_PREFIX}{}", matrix.provenance())?;
    }
    writeln!(
        out,
        "{MAGIC} {VERSION} {} {}",
        matrix.frames(),
        matrix.coeffs()
    )?;
    for row in matrix.rows() {
        let mut first = true;
        for v in row {
            if first {
                write!(out, "{v}")?;
                first = false;
            } else {
                write!(out, " {v}")?;
            }
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Serialize to a file.
pub fn write<S: Scalar>(
    path: impl AsRef<Path>,
    matrix: &FeatureMatrix<S>,
    comments: &[String],
) -> Result<()> {
    let path = path.as_ref();
    let io_err = |source: std::io::Error| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut out = BufWriter::new(File::create(path).map_err(io_err)?);
    write_to(&mut out, matrix, comments).map_err(io_err)?;
    out.flush().map_err(io_err)
}

/// Parse from any reader; `origin` is used for error context only.
pub fn read_from<R: BufRead, S: Scalar>(reader: R, origin: &Path) -> Result<FeatureMatrix<S>> {
    let bad = |detail: String| Error::MalformedFeat {
        path: origin.to_path_buf(),
        detail,
    };
    let mut lines = reader.lines();
    let mut provenance = None;

    let header = loop {
        let line = match lines.next() {
            Some(line) => line.map_err(|e| bad(format!("read failure: {e}")))?,
            None => return Err(bad("missing FEAT header".into())),
        };
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(label) = line.strip_prefix(PROVENANCE_PREFIX) {
                provenance = Some(label.trim().to_string());
            }
            let _ = rest;
            continue;
        }
        break line;
    };

    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != MAGIC {
        return Err(bad(format!("bad header line {header:?}")));
    }
    if fields[1] != VERSION {
        return Err(bad(format!("unsupported version {:?}", fields[1])));
    }
    let frames: usize = fields[2]
        .parse()
        .map_err(|_| bad(format!("bad frame count {:?}", fields[2])))?;
    let coeffs: usize = fields[3]
        .parse()
        .map_err(|_| bad(format!("bad coefficient count {:?}", fields[3])))?;
    if frames == 0 || coeffs == 0 {
        return Err(bad(format!("degenerate shape {frames}x{coeffs}")));
    }

    let mut values = Vec::with_capacity(frames * coeffs);
    for t in 0..frames {
        let line = match lines.next() {
            Some(line) => line.map_err(|e| bad(format!("read failure: {e}")))?,
            None => return Err(bad(format!("expected {frames} rows, found {t}"))),
        };
        let mut n = 0usize;
        for token in line.split_whitespace() {
            let v: f64 = token
                .parse()
                .map_err(|_| bad(format!("row {t}: bad value {token:?}")))?;
            if !v.is_finite() {
                return Err(bad(format!("row {t}: non-finite value {token:?}")));
            }
            values.push(crate::num::scalar::<S>(v));
            n += 1;
        }
        if n != coeffs {
            return Err(bad(format!("row {t}: expected {coeffs} values, found {n}")));
        }
    }
    for line in lines {
        let line = line.map_err(|e| bad(format!("read failure: {e}")))?;
        if !line.trim().is_empty() {
            return Err(bad(format!(
                "trailing content after {frames} rows: {line:?}"
            )));
        }
    }

    let matrix = FeatureMatrix::from_flat(frames, coeffs, values)?;
    let label = provenance.unwrap_or_else(|| {
        origin
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    });
    Ok(matrix.with_provenance(label))
}

/// Parse a feature file.
pub fn read<S: Scalar>(path: impl AsRef<Path>) -> Result<FeatureMatrix<S>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingFile {
            path: path.to_path_buf(),
        },
        _ => Error::Io {
            path: path.to_path_buf(),
            source: e,
        },
    })?;
    read_from(BufReader::new(file), path)
}
