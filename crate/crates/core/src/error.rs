//! Error type shared by the whole crate.

use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    /// A referenced file does not exist or could not be opened.
    #[error("file not found: {path}")]
    MissingFile { path: PathBuf },

    /// The file is not a well-formed RIFF/WAVE container.
    #[error("malformed WAV {path}: {detail}")]
    MalformedWav { path: PathBuf, detail: String },

    /// The WAV container is valid but not 16-bit integer PCM with 1-2 channels.
    #[error("unsupported WAV encoding in {path}: {detail}")]
    UnsupportedWav { path: PathBuf, detail: String },

    /// A FEATv1 feature file failed to parse.
    #[error("malformed feature file {path}: {detail}")]
    MalformedFeat { path: PathBuf, detail: String },

    /// Underlying I/O failure with path context.
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A configuration value violates its invariants.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A warping radius was requested; only unconstrained DTW is implemented.
    #[error("warping radius {0} requested, but constrained DTW is not supported")]
    UnsupportedRadius(usize),

    /// The signal is shorter than a single analysis window.
    #[error("signal of {n_samples} samples is shorter than one window of {window_samples}")]
    SignalTooShort {
        n_samples: usize,
        window_samples: usize,
    },

    /// Vectors of different lengths were passed to a frame distance.
    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// Two feature matrices disagree on the coefficient count.
    #[error("coefficient count mismatch: {left} vs {right}")]
    CoeffMismatch { left: usize, right: usize },

    /// An operation received an empty collection it cannot work on.
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    /// A value that must be finite was not.
    #[error("non-finite value: {0}")]
    NonFinite(String),

    /// Template length must be at least one frame for scaling.
    #[error("template length must be >= 1, got {0}")]
    InvalidTemplateLen(usize),

    /// The initial-sequence index passed to barycenter averaging is out of range.
    #[error("initial sequence index {index} out of range for {len} inputs")]
    InvalidInitIndex { index: usize, len: usize },

    /// Two lexicon entries share a label.
    #[error("duplicate lexicon label: {0:?}")]
    DuplicateLabel(String),

    /// A lexicon label is empty.
    #[error("empty lexicon label")]
    EmptyLabel,

    /// A query label has no matching lexicon entry.
    #[error("query label {0:?} not present in the lexicon")]
    UnknownLabel(String),

    /// `k` is outside `1..=lexicon size`.
    #[error("k = {k} outside 1..={size}")]
    InvalidK { k: usize, size: usize },
}
