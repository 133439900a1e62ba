//! Seeded synthetic word corpus generator.
//!
//! Each word is a distinct multi-segment tone/chirp pattern with a
//! word-dependent duration between 300 and 900 ms. Segment frequencies sit
//! on a coarse log-spaced grid (steps of roughly seven semitones) and word
//! patterns are rejection-sampled to differ from every earlier word in at
//! least two segments (or in segment count), so between-word spectral
//! distances stay far above the within-word variation. Each speaker
//! carries a fixed pitch offset and every recording adds small pitch, gain
//! and duration (within +-10%) jitter.
//!
//! All randomness flows from one master seed through per-word /
//! per-speaker / per-recording ChaCha8 streams, so a given
//! (seed, n_words, n_speakers) triple reproduces every output byte.
//! Speakers are named `s1..sN`; the convention downstream is s1 as the
//! query speaker and the rest as template speakers.

use std::f64::consts::PI;
use std::path::Path;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use absement::wav::wav_pcm16_bytes;

use crate::error::{CliError, Result};
use crate::manifest::{write_manifest, Manifest};
use crate::util::{atomic_write, ensure_dir, mix_seed};

pub const SAMPLE_RATE: u32 = 16_000;

const WORD_STREAM: u64 = 0x01;
const SPEAKER_STREAM: u64 = 0x02;
const RECORDING_STREAM: u64 = 0x03;

/// Log-spaced frequency levels segments snap to.
const FREQ_LEVELS: usize = 8;
const FREQ_LOW: f64 = 220.0;
const FREQ_HIGH: f64 = 3_400.0;

#[derive(Debug, Clone, Copy)]
pub struct SynthConfig {
    pub n_words: usize,
    pub n_speakers: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
struct Segment {
    freq_idx: usize,
    chirp_steps: i32,
    amp: f64,
    duration_s: f64,
}

impl Segment {
    fn signature(&self) -> (usize, i32) {
        (self.freq_idx, self.chirp_steps)
    }

    fn f_start(&self) -> f64 {
        grid_freq(self.freq_idx as f64)
    }

    fn f_end(&self) -> f64 {
        grid_freq(clamp_idx(self.freq_idx as i64 + self.chirp_steps as i64) as f64)
    }
}

fn grid_freq(idx: f64) -> f64 {
    FREQ_LOW * (FREQ_HIGH / FREQ_LOW).powf(idx / (FREQ_LEVELS - 1) as f64)
}

fn clamp_idx(idx: i64) -> i64 {
    idx.clamp(0, FREQ_LEVELS as i64 - 1)
}

fn draw_pattern(rng: &mut ChaCha8Rng) -> Vec<Segment> {
    let n_segments = rng.random_range(2..=4usize);
    let total_s = rng.random_range(0.3..0.9);
    let weights: Vec<f64> = (0..n_segments)
        .map(|_| rng.random_range(0.5..1.5))
        .collect();
    let weight_sum: f64 = weights.iter().sum();
    weights
        .iter()
        .map(|w| {
            let freq_idx = rng.random_range(0..FREQ_LEVELS);
            let chirp_steps = if rng.random_bool(0.5) {
                *[-2, -1, 1, 2].get(rng.random_range(0..4usize)).unwrap()
            } else {
                0
            };
            Segment {
                freq_idx,
                chirp_steps,
                amp: rng.random_range(0.5..0.9),
                duration_s: total_s * w / weight_sum,
            }
        })
        .collect()
}

fn patterns_conflict(a: &[Segment], b: &[Segment]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let differing = a
        .iter()
        .zip(b)
        .filter(|(x, y)| x.signature() != y.signature())
        .count();
    differing < 2
}

/// Tone/chirp patterns for words `0..n_words`. Generation is sequential and
/// seeded, and each pattern is redrawn until it differs from every earlier
/// word in at least two segments or in segment count, so `patterns[w]` is
/// the same for every `n_words > w`.
fn word_patterns(seed: u64, n_words: usize) -> Vec<Vec<Segment>> {
    let mut patterns: Vec<Vec<Segment>> = Vec::with_capacity(n_words);
    for w in 0..n_words {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, WORD_STREAM, w as u64));
        let mut pattern = draw_pattern(&mut rng);
        while patterns.iter().any(|p| patterns_conflict(p, &pattern)) {
            pattern = draw_pattern(&mut rng);
        }
        patterns.push(pattern);
    }
    patterns
}

fn render(
    pattern: &[Segment],
    pitch_factor: f64,
    gain: f64,
    duration_factor: f64,
    rate: u32,
) -> Vec<f64> {
    let mut samples = Vec::new();
    let mut phase = 0.0f64;
    for seg in pattern {
        let n = ((seg.duration_s * duration_factor * rate as f64).round() as usize).max(1);
        let ramp = ((rate as f64 * 0.01) as usize).min(n / 4).max(1);
        let (f_start, f_end) = (seg.f_start(), seg.f_end());
        for t in 0..n {
            let frac = t as f64 / n as f64;
            let f = ((f_start + (f_end - f_start) * frac) * pitch_factor).min(7_600.0);
            phase += 2.0 * PI * f / rate as f64;
            let env = if t < ramp {
                0.5 - 0.5 * (PI * t as f64 / ramp as f64).cos()
            } else if t + ramp >= n {
                0.5 - 0.5 * (PI * (n - t) as f64 / ramp as f64).cos()
            } else {
                1.0
            };
            samples.push((gain * seg.amp * env * phase.sin()).clamp(-0.999, 0.999));
        }
    }
    samples
}

fn word_label(index: usize, n_words: usize) -> String {
    let width = (n_words.saturating_sub(1)).to_string().len().max(3);
    format!("w{index:0width$}")
}

fn render_with_pattern(
    cfg: &SynthConfig,
    pattern: &[Segment],
    word_index: usize,
    speaker_index: usize,
) -> Vec<f64> {
    let mut speaker_rng =
        ChaCha8Rng::seed_from_u64(mix_seed(cfg.seed, SPEAKER_STREAM, speaker_index as u64));
    // Kept small relative to the frequency grid: for tone patterns, pitch
    // is the word identity, so large per-speaker offsets would blur words
    // into each other rather than mimic voice differences.
    let speaker_semitones = speaker_rng.random_range(-1.0..1.0);

    let mut rec_rng = ChaCha8Rng::seed_from_u64(mix_seed(
        cfg.seed,
        RECORDING_STREAM,
        (word_index as u64) << 20 | speaker_index as u64,
    ));
    let jitter_semitones = rec_rng.random_range(-0.3..0.3);
    let pitch_factor = 2f64.powf((speaker_semitones + jitter_semitones) / 12.0);
    let gain = rec_rng.random_range(0.65..0.95);
    let duration_factor = rec_rng.random_range(0.9..1.1);

    render(pattern, pitch_factor, gain, duration_factor, SAMPLE_RATE)
}

/// Render one recording of word `word_index` by speaker `speaker_index`
/// (both 0-based) under a master seed. Exposed so tests can regenerate any
/// single recording.
pub fn render_recording(cfg: &SynthConfig, word_index: usize, speaker_index: usize) -> Vec<f64> {
    let patterns = word_patterns(cfg.seed, word_index + 1);
    render_with_pattern(cfg, &patterns[word_index], word_index, speaker_index)
}

/// Generate the corpus: one WAV per (word, speaker) plus `manifest.tsv`,
/// all under `out_dir`. Returns the loaded manifest.
pub fn generate_corpus(cfg: &SynthConfig, out_dir: &Path) -> Result<Manifest> {
    if cfg.n_words == 0 {
        return Err(CliError::input("--n-words must be >= 1"));
    }
    if cfg.n_speakers < 3 {
        return Err(CliError::input(
            "--n-speakers must be >= 3 (two template speakers plus one query speaker)",
        ));
    }
    ensure_dir(out_dir)?;

    let patterns = word_patterns(cfg.seed, cfg.n_words);
    let mut rows = Vec::with_capacity(cfg.n_words * cfg.n_speakers);
    for (w, pattern) in patterns.iter().enumerate() {
        let word = word_label(w, cfg.n_words);
        for s in 0..cfg.n_speakers {
            let speaker = format!("s{}", s + 1);
            let file = format!("{word}__{speaker}.wav");
            let samples = render_with_pattern(cfg, pattern, w, s);
            atomic_write(
                &out_dir.join(&file),
                &wav_pcm16_bytes(SAMPLE_RATE, &samples),
            )?;
            rows.push((word.clone(), speaker, file));
        }
    }

    let manifest_path = out_dir.join("manifest.tsv");
    write_manifest(&manifest_path, &rows)?;
    Manifest::load(&manifest_path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_counts_and_determinism() {
        let cfg = SynthConfig {
            n_words: 3,
            n_speakers: 3,
            seed: 42,
        };
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        let manifest = generate_corpus(&cfg, dir_a.path()).unwrap();
        assert_eq!(manifest.len(), 9);
        generate_corpus(&cfg, dir_b.path()).unwrap();
        for row in manifest.rows() {
            let name = row.path.file_name().unwrap();
            let a = std::fs::read(&row.path).unwrap();
            let b = std::fs::read(dir_b.path().join(name)).unwrap();
            assert_eq!(a, b, "{name:?} differs between same-seed runs");
        }
    }

    #[test]
    fn render_recording_matches_corpus_generation() {
        let cfg = SynthConfig {
            n_words: 4,
            n_speakers: 3,
            seed: 17,
        };
        let dir = tempfile::tempdir().unwrap();
        generate_corpus(&cfg, dir.path()).unwrap();
        let standalone = render_recording(&cfg, 2, 1);
        let from_corpus: absement::Waveform64 =
            absement::wav::load_wav(dir.path().join("w002__s2.wav")).unwrap();
        assert_eq!(standalone.len(), from_corpus.samples().len());
    }

    #[test]
    fn different_seeds_differ() {
        let a = render_recording(
            &SynthConfig {
                n_words: 1,
                n_speakers: 3,
                seed: 1,
            },
            0,
            0,
        );
        let b = render_recording(
            &SynthConfig {
                n_words: 1,
                n_speakers: 3,
                seed: 2,
            },
            0,
            0,
        );
        assert_ne!(a, b);
    }

    #[test]
    fn word_patterns_never_nearly_collide() {
        for seed in [0u64, 7, 21, 99] {
            let patterns = word_patterns(seed, 60);
            for (i, a) in patterns.iter().enumerate() {
                for b in patterns.iter().skip(i + 1) {
                    assert!(!patterns_conflict(a, b), "seed {seed}: words collide");
                }
            }
        }
    }

    #[test]
    fn durations_land_in_the_documented_band() {
        let cfg = SynthConfig {
            n_words: 10,
            n_speakers: 3,
            seed: 5,
        };
        for w in 0..10 {
            let samples = render_recording(&cfg, w, 1);
            let secs = samples.len() as f64 / SAMPLE_RATE as f64;
            // 300-900 ms base, +-10% duration jitter, rounding slack.
            assert!((0.26..1.0).contains(&secs), "word {w}: {secs}s");
        }
    }

    #[test]
    fn invalid_counts_are_input_errors() {
        let dir = tempfile::tempdir().unwrap();
        let err = generate_corpus(
            &SynthConfig {
                n_words: 0,
                n_speakers: 3,
                seed: 0,
            },
            dir.path(),
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 1);
        let err = generate_corpus(
            &SynthConfig {
                n_words: 1,
                n_speakers: 2,
                seed: 0,
            },
            dir.path(),
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }
}
