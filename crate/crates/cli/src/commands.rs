//! Implementations behind the CLI subcommands.
//!
//! Each command is a plain function over paths and configs so the pipeline
//! can also be driven as a library; the binary in `main.rs` only parses
//! arguments and maps errors to exit codes. Batch work fans out per file
//! with rayon, and every output file is written atomically.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use absement::dba::{dba_average, DbaConfig, DbaInit};
use absement::dtw::{distance_profile, dtw_absement, DtwOptions, Reference};
use absement::feat;
use absement::frontend::{mfcc, FeatureMatrix, FrontendConfig};
use absement::recognizer::{build_lexicon, evaluate};
use absement::wav::load_wav;

use crate::error::{CliError, Result};
use crate::manifest::{write_manifest, Manifest, ManifestRow};
use crate::synth::{generate_corpus, SynthConfig};
use crate::util::{atomic_write, ensure_dir, mix_seed_label};

/// Everything one pipeline run needs.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub frontend: FrontendConfig,
    pub dba: DbaConfig,
    pub k: usize,
    pub seed: u64,
    pub output_dir: PathBuf,
}

impl RunConfig {
    pub fn new(output_dir: PathBuf) -> Self {
        Self {
            frontend: FrontendConfig::default(),
            dba: DbaConfig::default(),
            k: 10,
            seed: 0,
            output_dir,
        }
    }
}

/// Load features from a path: `.feat` files are parsed directly, anything
/// else is decoded as WAV and featurized.
pub fn load_features(path: &Path, cfg: &FrontendConfig) -> absement::Result<FeatureMatrix<f64>> {
    if path.extension().is_some_and(|e| e == "feat") {
        feat::read(path)
    } else {
        mfcc(&load_wav::<f64>(path)?, cfg)
    }
}

fn featurize_row(row: &ManifestRow, cfg: &FrontendConfig) -> absement::Result<FeatureMatrix<f64>> {
    let label = format!("{}__{}", row.word, row.speaker);
    Ok(load_features(&row.path, cfg)?.with_provenance(label))
}

/// Outcome of one batch item, tagged with its manifest context.
type RowOutcome<T> = (String, std::result::Result<T, CliError>);

/// Report per-row failures with their manifest context and fold them into
/// one processing error.
fn drain_failures<T>(what: &str, results: Vec<RowOutcome<T>>) -> Result<Vec<T>> {
    let total = results.len();
    let mut ok = Vec::with_capacity(total);
    let mut failures = 0usize;
    for (context, result) in results {
        match result {
            Ok(value) => ok.push(value),
            Err(err) => {
                failures += 1;
                eprintln!("error: {context}: {err}");
            }
        }
    }
    if failures > 0 {
        return Err(CliError::processing(format!(
            "{failures} of {total} {what} failed"
        )));
    }
    Ok(ok)
}

/// `featurize`: one FEATv1 file per manifest row, named
/// `<word>__<speaker>.feat`, plus a `features.tsv` manifest pointing at
/// them. Overwrites existing outputs; re-runs are byte-identical.
pub fn cmd_featurize(manifest_path: &Path, run: &RunConfig) -> Result<usize> {
    let manifest = Manifest::load(manifest_path)?;
    ensure_dir(&run.output_dir)?;

    let results: Vec<RowOutcome<(String, String, String)>> = manifest
        .rows()
        .par_iter()
        .map(|row| {
            let context = format!("row ({}, {})", row.word, row.speaker);
            let out = (|| -> Result<(String, String, String)> {
                let features = featurize_row(row, &run.frontend)?;
                let file = format!("{}__{}.feat", row.word, row.speaker);
                let mut bytes = Vec::new();
                feat::write_to(&mut bytes, &features, &[])
                    .map_err(|e| CliError::processing(format!("serializing {file}: {e}")))?;
                atomic_write(&run.output_dir.join(&file), &bytes)?;
                Ok((row.word.clone(), row.speaker.clone(), file))
            })();
            (context, out)
        })
        .collect();

    let rows = drain_failures("manifest rows", results)?;
    write_manifest(&run.output_dir.join("features.tsv"), &rows)?;
    println!(
        "featurized {} recordings into {}",
        rows.len(),
        run.output_dir.display()
    );
    Ok(rows.len())
}

/// `average`: one `<word>__avg.feat` template per word, averaged over that
/// word's recordings with a seeded random choice of initial sequence.
pub fn cmd_average(
    manifest_path: &Path,
    run: &RunConfig,
    speakers: Option<&[String]>,
) -> Result<usize> {
    let mut manifest = Manifest::load(manifest_path)?;
    if let Some(speakers) = speakers {
        manifest = manifest.filter_speakers(speakers)?;
    }
    ensure_dir(&run.output_dir)?;

    let mut by_word: BTreeMap<&str, Vec<&ManifestRow>> = BTreeMap::new();
    for row in manifest.rows() {
        by_word.entry(&row.word).or_default().push(row);
    }
    for rows in by_word.values_mut() {
        rows.sort_by(|a, b| a.speaker.cmp(&b.speaker));
    }
    let lonely: Vec<&str> = by_word
        .iter()
        .filter(|(_, rows)| rows.len() < 2)
        .map(|(word, _)| *word)
        .collect();
    if !lonely.is_empty() {
        return Err(CliError::input(format!(
            "averaging needs >= 2 recordings per word; offending words: {}",
            lonely.join(", ")
        )));
    }

    let words: Vec<(&str, &Vec<&ManifestRow>)> = by_word.iter().map(|(w, r)| (*w, r)).collect();
    let results: Vec<RowOutcome<()>> = words
        .par_iter()
        .map(|(word, rows)| {
            let context = format!("word {word}");
            let out = (|| -> Result<()> {
                let inputs: Vec<FeatureMatrix<f64>> = rows
                    .iter()
                    .map(|row| featurize_row(row, &run.frontend).map_err(CliError::from))
                    .collect::<Result<_>>()?;
                let word_seed = mix_seed_label(run.seed, 0x10, word);
                let cfg = DbaConfig {
                    init: DbaInit::Random(word_seed),
                    ..run.dba.clone()
                };
                let outcome = dba_average(&inputs, &cfg)?;
                let input_names: Vec<String> = rows
                    .iter()
                    .map(|r| {
                        r.path
                            .file_name()
                            .unwrap_or_default()
                            .to_string_lossy()
                            .into_owned()
                    })
                    .collect();
                let metadata = format!(
                    "average seed={} init={} iterations={} inputs={}",
                    run.seed,
                    rows[outcome.init_index].speaker,
                    outcome.iterations_run,
                    input_names.join(",")
                );
                let file = format!("{word}__avg.feat");
                let mut bytes = Vec::new();
                feat::write_to(&mut bytes, &outcome.average, &[metadata])
                    .map_err(|e| CliError::processing(format!("serializing {file}: {e}")))?;
                atomic_write(&run.output_dir.join(&file), &bytes)?;
                Ok(())
            })();
            (context, out)
        })
        .collect();

    let written = drain_failures("words", results)?.len();
    println!("averaged {written} words into {}", run.output_dir.display());
    Ok(written)
}

/// Summary row of an evaluation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalSummary {
    pub n: usize,
    pub top1: f64,
    pub topk: f64,
    pub k: usize,
}

fn template_word_from_stem(stem: &str) -> &str {
    match stem.rfind("__") {
        Some(pos) => &stem[..pos],
        None => stem,
    }
}

/// Load every `*.feat` in a directory as a labeled template. The word label
/// is the file stem with a trailing `__<tag>` (such as `__avg`) stripped.
pub fn load_template_dir(dir: &Path) -> Result<Vec<(String, FeatureMatrix<f64>)>> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| CliError::input(format!("cannot read template dir {}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "feat"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(CliError::input(format!(
            "no .feat templates found in {}",
            dir.display()
        )));
    }
    paths
        .iter()
        .map(|path| {
            let stem = path.file_stem().unwrap_or_default().to_string_lossy();
            let word = template_word_from_stem(&stem).to_string();
            let features = feat::read(path).map_err(CliError::from)?;
            Ok((word, features))
        })
        .collect()
}

/// `evaluate`: rank the template lexicon against every query row, write
/// `per_query.csv` and `summary.csv`, and print the accuracies.
pub fn cmd_evaluate(
    manifest_path: &Path,
    templates_dir: &Path,
    run: &RunConfig,
    speakers: Option<&[String]>,
    dtw: &DtwOptions,
) -> Result<EvalSummary> {
    dtw.validate().map_err(CliError::from)?;
    let mut manifest = Manifest::load(manifest_path)?;
    if let Some(speakers) = speakers {
        manifest = manifest.filter_speakers(speakers)?;
    }
    ensure_dir(&run.output_dir)?;

    let lexicon = build_lexicon(load_template_dir(templates_dir)?).map_err(CliError::from)?;

    let missing: Vec<&str> = manifest
        .rows()
        .iter()
        .map(|r| r.word.as_str())
        .filter(|w| !lexicon.contains(w))
        .collect();
    if !missing.is_empty() {
        return Err(CliError::input(format!(
            "missing template for query words: {}",
            missing.join(", ")
        )));
    }

    let results: Vec<RowOutcome<(String, FeatureMatrix<f64>)>> = manifest
        .rows()
        .par_iter()
        .map(|row| {
            let context = format!("row ({}, {})", row.word, row.speaker);
            let out = featurize_row(row, &run.frontend)
                .map(|features| (row.word.clone(), features))
                .map_err(CliError::from);
            (context, out)
        })
        .collect();
    let queries = drain_failures("query rows", results)?;

    let report = evaluate(&queries, &lexicon, run.k).map_err(CliError::from)?;

    let mut per_query = Vec::new();
    report
        .write_per_query_csv(&mut per_query)
        .map_err(|e| CliError::processing(format!("serializing per_query.csv: {e}")))?;
    atomic_write(&run.output_dir.join("per_query.csv"), &per_query)?;
    let mut summary = Vec::new();
    report
        .write_summary_csv(&mut summary)
        .map_err(|e| CliError::processing(format!("serializing summary.csv: {e}")))?;
    atomic_write(&run.output_dir.join("summary.csv"), &summary)?;

    println!("queries: {}", report.n_queries);
    println!("top-1 accuracy: {}", report.top1_accuracy);
    println!("top-{} accuracy: {}", report.k, report.topk_accuracy);
    Ok(EvalSummary {
        n: report.n_queries,
        top1: report.top1_accuracy,
        topk: report.topk_accuracy,
        k: report.k,
    })
}

/// `profile`: distance profile between two feature files, written as CSV;
/// prints the total and scaled cost.
pub fn cmd_profile(
    query_path: &Path,
    template_path: &Path,
    reference: Reference,
    out_csv: &Path,
    dtw: &DtwOptions,
) -> Result<(f64, f64)> {
    dtw.validate().map_err(CliError::from)?;
    let query: FeatureMatrix<f64> = feat::read(query_path).map_err(CliError::from)?;
    let template: FeatureMatrix<f64> = feat::read(template_path).map_err(CliError::from)?;

    let result = dtw_absement(&query, &template).map_err(CliError::from)?;
    let profile = distance_profile(&query, &template, reference).map_err(CliError::from)?;

    let mut bytes = Vec::new();
    profile
        .write_csv(&mut bytes)
        .map_err(|e| CliError::processing(format!("serializing profile: {e}")))?;
    if let Some(parent) = out_csv.parent().filter(|p| !p.as_os_str().is_empty()) {
        ensure_dir(parent)?;
    }
    atomic_write(out_csv, &bytes)?;

    println!("cost: {}", result.cost);
    println!("scaled cost: {}", result.scaled_cost);
    Ok((result.cost, result.scaled_cost))
}

/// `synth`: generate the seeded synthetic corpus.
pub fn cmd_synth(cfg: &SynthConfig, out_dir: &Path) -> Result<usize> {
    let manifest = generate_corpus(cfg, out_dir)?;
    println!(
        "synthesized {} recordings ({} words x {} speakers) into {}",
        manifest.len(),
        cfg.n_words,
        cfg.n_speakers,
        out_dir.display()
    );
    Ok(manifest.len())
}
