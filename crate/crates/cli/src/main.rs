use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use absement::dtw::{DtwOptions, Reference};
use absement::frontend::FrontendConfig;

use absement_cli::commands::{
    cmd_average, cmd_evaluate, cmd_featurize, cmd_profile, cmd_synth, RunConfig,
};
use absement_cli::synth::SynthConfig;

/// Acoustic absement toolkit: featurize WAV corpora into MFCC matrices,
/// average per-word templates, rank a template lexicon against queries by
/// DTW absement, and export distance profiles.
#[derive(Parser)]
#[command(name = "absement", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FrontendArgs {
    /// Analysis window length in milliseconds
    #[arg(long, default_value_t = 25)]
    window_ms: u32,
    /// Frame advance in milliseconds
    #[arg(long, default_value_t = 10)]
    hop_ms: u32,
    /// Cepstral coefficients per frame (slot 0 carries log energy)
    #[arg(long, default_value_t = 13)]
    n_coeffs: usize,
    /// Triangular mel filters
    #[arg(long, default_value_t = 26)]
    n_mel_filters: usize,
    /// Pre-emphasis coefficient in [0, 1)
    #[arg(long, default_value_t = 0.97)]
    pre_emphasis: f64,
    /// Lower mel band edge in Hz
    #[arg(long, default_value_t = 0.0)]
    mel_low_hz: f64,
    /// Upper mel band edge in Hz (defaults to Nyquist)
    #[arg(long)]
    mel_high_hz: Option<f64>,
    /// Floor inside every logarithm
    #[arg(long, default_value_t = 1e-10)]
    log_floor: f64,
}

impl FrontendArgs {
    fn to_config(&self) -> FrontendConfig {
        FrontendConfig {
            window_ms: self.window_ms,
            hop_ms: self.hop_ms,
            n_coeffs: self.n_coeffs,
            n_mel_filters: self.n_mel_filters,
            pre_emphasis: self.pre_emphasis,
            mel_low_hz: self.mel_low_hz,
            mel_high_hz: self.mel_high_hz,
            log_floor: self.log_floor,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReferenceArg {
    Query,
    Template,
}

impl From<ReferenceArg> for Reference {
    fn from(r: ReferenceArg) -> Self {
        match r {
            ReferenceArg::Query => Reference::Query,
            ReferenceArg::Template => Reference::Template,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Convert every manifest recording into a FEATv1 feature file
    Featurize {
        /// TSV manifest (word\tspeaker\tpath)
        #[arg(long)]
        manifest: PathBuf,
        /// Output directory for .feat files
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        frontend: FrontendArgs,
    },
    /// Average each word's recordings into one template (needs >= 2 per word)
    Average {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Master seed for the random initial-sequence choice
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict to these speakers (comma-separated)
        #[arg(long, value_delimiter = ',')]
        speakers: Option<Vec<String>>,
        /// Averaging rounds cap
        #[arg(long, default_value_t = 10)]
        dba_max_iterations: usize,
        /// Stop when the relative objective decrease falls below this
        #[arg(long, default_value_t = 1e-6)]
        dba_rel_tolerance: f64,
        #[command(flatten)]
        frontend: FrontendArgs,
    },
    /// Rank the template lexicon against every query row; report accuracy
    Evaluate {
        /// Query manifest (word\tspeaker\tpath; .wav or .feat paths)
        #[arg(long)]
        manifest: PathBuf,
        /// Directory of template .feat files
        #[arg(long)]
        templates: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Ranking depth for top-k accuracy
        #[arg(long, default_value_t = 10)]
        k: usize,
        /// Restrict queries to these speakers (comma-separated)
        #[arg(long, value_delimiter = ',')]
        speakers: Option<Vec<String>>,
        /// Warping radius (reserved; any value is rejected)
        #[arg(long)]
        radius: Option<usize>,
        #[command(flatten)]
        frontend: FrontendArgs,
    },
    /// Export the per-frame distance profile between two feature files
    Profile {
        /// Query .feat file
        query: PathBuf,
        /// Template .feat file
        template: PathBuf,
        /// Which sequence the profile is indexed by
        #[arg(long, value_enum, default_value_t = ReferenceArg::Query)]
        reference: ReferenceArg,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
        /// Warping radius (reserved; any value is rejected)
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Generate a seeded synthetic word corpus with a manifest
    Synth {
        #[arg(long)]
        n_words: usize,
        /// Speakers per word (s1 is the conventional query speaker)
        #[arg(long, default_value_t = 3)]
        n_speakers: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> absement_cli::Result<()> {
    match cli.command {
        Command::Featurize {
            manifest,
            out,
            frontend,
        } => {
            let run = RunConfig {
                frontend: frontend.to_config(),
                ..RunConfig::new(out)
            };
            cmd_featurize(&manifest, &run)?;
        }
        Command::Average {
            manifest,
            out,
            seed,
            speakers,
            dba_max_iterations,
            dba_rel_tolerance,
            frontend,
        } => {
            let mut run = RunConfig {
                frontend: frontend.to_config(),
                seed,
                ..RunConfig::new(out)
            };
            run.dba.max_iterations = dba_max_iterations;
            run.dba.rel_tolerance = dba_rel_tolerance;
            cmd_average(&manifest, &run, speakers.as_deref())?;
        }
        Command::Evaluate {
            manifest,
            templates,
            out,
            k,
            speakers,
            radius,
            frontend,
        } => {
            let run = RunConfig {
                frontend: frontend.to_config(),
                k,
                ..RunConfig::new(out)
            };
            cmd_evaluate(
                &manifest,
                &templates,
                &run,
                speakers.as_deref(),
                &DtwOptions { radius },
            )?;
        }
        Command::Profile {
            query,
            template,
            reference,
            out,
            radius,
        } => {
            cmd_profile(
                &query,
                &template,
                reference.into(),
                &out,
                &DtwOptions { radius },
            )?;
        }
        Command::Synth {
            n_words,
            n_speakers,
            seed,
            out,
        } => {
            cmd_synth(
                &SynthConfig {
                    n_words,
                    n_speakers,
                    seed,
                },
                &out,
            )?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
