//! Acoustic absement between speech recordings.
//!
//! Absement is the time-summed distance between two trajectories. For speech,
//! the trajectories are MFCC-by-time matrices and the sum runs along the
//! optimal dynamic time warping path, so the result accounts for both how far
//! apart two productions are and for how long they stay apart.
//!
//! The crate covers the full template-matching pipeline:
//!
//! * [`frontend`] converts 16-bit PCM WAV recordings into [`FeatureMatrix`]
//!   values (framing, Hamming window, mel filterbank, DCT-II, log energy).
//! * [`dtw`] computes frame distances, the DTW absement with its warping
//!   path, per-frame distance profiles and the `cost / sqrt(template length)`
//!   scaling used for recognition.
//! * [`dba`] builds a single average template from several productions of the
//!   same word (dynamic barycenter averaging).
//! * [`recognizer`] ranks a lexicon of templates against a query by scaled
//!   absement and reports top-1 / top-k accuracy.
//! * [`feat`] reads and writes the plain-text `FEATv1` feature file format.
//!
//! All numeric code is generic over the scalar type via [`Scalar`]; `f32`
//! and `f64` both work. The `*64` aliases at the crate root are what most
//! callers (including the bundled CLI) use.

pub mod dba;
pub mod dtw;
pub mod error;
pub mod feat;
pub mod frontend;
pub mod num;
pub mod recognizer;
pub mod wav;

pub use error::{Error, Result};
pub use num::Scalar;

pub use dba::{DbaConfig, DbaInit, DbaOutcome};
pub use dtw::{AbsementResult, DistanceProfile, DtwOptions, Reference, WarpPath};
pub use frontend::{FeatureMatrix, FrontendConfig, Waveform};
pub use recognizer::{EvalReport, Lexicon, RecognitionResult};

/// `f64` feature matrix, the default precision of the CLI.
pub type FeatureMatrix64 = frontend::FeatureMatrix<f64>;
/// `f32` feature matrix.
pub type FeatureMatrix32 = frontend::FeatureMatrix<f32>;
/// `f64` waveform.
pub type Waveform64 = frontend::Waveform<f64>;
/// `f64` absement result.
pub type AbsementResult64 = dtw::AbsementResult<f64>;
/// `f64` lexicon.
pub type Lexicon64 = recognizer::Lexicon<f64>;
