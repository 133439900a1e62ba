//! Library surface of the absement CLI: manifest handling, the synthetic
//! corpus generator, and the command implementations, so pipelines can be
//! driven programmatically and tested without spawning the binary.

pub mod commands;
pub mod error;
pub mod manifest;
pub mod synth;
pub mod util;

pub use commands::{
    cmd_average, cmd_evaluate, cmd_featurize, cmd_profile, cmd_synth, load_features,
    load_template_dir, EvalSummary, RunConfig,
};
pub use error::{CliError, Result};
pub use manifest::{Manifest, ManifestRow};
pub use synth::{generate_corpus, SynthConfig, SAMPLE_RATE};
