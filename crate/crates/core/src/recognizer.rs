//! Template-based isolated-word recognition.
//!
//! A [`Lexicon`] maps word labels to average templates. [`recognize`] scans
//! the whole lexicon with [`crate::dtw::dtw_cost`], ranks every entry by
//! scaled absement ascending (ties broken lexicographically by label, so the
//! ordering is total and runs are deterministic), and [`evaluate`] turns a
//! labeled query set into top-1 / top-k accuracy. Lexicon scans fan out one
//! DTW per entry with rayon; the final sort makes results independent of
//! scheduling.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;

use crate::dtw::{dtw_cost, scaled_absement};
use crate::error::{Error, Result};
use crate::frontend::FeatureMatrix;
use crate::num::Scalar;

/// Labeled set of templates, all sharing one coefficient count.
#[derive(Debug, Clone, PartialEq)]
pub struct Lexicon<S> {
    entries: BTreeMap<String, FeatureMatrix<S>>,
    coeffs: usize,
}

impl<S: Scalar> Lexicon<S> {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn coeffs(&self) -> usize {
        self.coeffs
    }

    pub fn contains(&self, label: &str) -> bool {
        self.entries.contains_key(label)
    }

    pub fn get(&self, label: &str) -> Option<&FeatureMatrix<S>> {
        self.entries.get(label)
    }

    /// Entries in label order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &FeatureMatrix<S>)> {
        self.entries.iter().map(|(l, t)| (l.as_str(), t))
    }
}

/// Validate labeled templates into a [`Lexicon`].
pub fn build_lexicon<S: Scalar>(
    templates: impl IntoIterator<Item = (String, FeatureMatrix<S>)>,
) -> Result<Lexicon<S>> {
    let mut entries = BTreeMap::new();
    let mut coeffs = None;
    for (label, template) in templates {
        if label.is_empty() {
            return Err(Error::EmptyLabel);
        }
        match coeffs {
            None => coeffs = Some(template.coeffs()),
            Some(k) if k != template.coeffs() => {
                return Err(Error::CoeffMismatch {
                    left: k,
                    right: template.coeffs(),
                })
            }
            _ => {}
        }
        if entries.insert(label.clone(), template).is_some() {
            return Err(Error::DuplicateLabel(label));
        }
    }
    match coeffs {
        Some(coeffs) => Ok(Lexicon { entries, coeffs }),
        None => Err(Error::EmptyInput("lexicon templates")),
    }
}

/// Full ranking of one query against a lexicon.
#[derive(Debug, Clone, PartialEq)]
pub struct RecognitionResult<S> {
    /// Ground-truth label, when known.
    pub query_label: Option<String>,
    /// Every lexicon entry with its scaled absement, ascending.
    pub ranked: Vec<(String, S)>,
    k: usize,
}

impl<S: Scalar> RecognitionResult<S> {
    /// The k best-ranked entries.
    pub fn top_k(&self) -> &[(String, S)] {
        &self.ranked[..self.k]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The recognized word: rank 1 of the list.
    pub fn best(&self) -> &str {
        &self.ranked[0].0
    }
}

/// Rank every lexicon entry against `query` by scaled absement.
pub fn recognize<S: Scalar>(
    query: &FeatureMatrix<S>,
    lexicon: &Lexicon<S>,
    k: usize,
) -> Result<RecognitionResult<S>> {
    if query.coeffs() != lexicon.coeffs() {
        return Err(Error::CoeffMismatch {
            left: query.coeffs(),
            right: lexicon.coeffs(),
        });
    }
    if k == 0 || k > lexicon.size() {
        return Err(Error::InvalidK {
            k,
            size: lexicon.size(),
        });
    }

    let entries: Vec<(&String, &FeatureMatrix<S>)> = lexicon.entries.iter().collect();
    let mut ranked = entries
        .into_par_iter()
        .map(|(label, template)| -> Result<(String, S)> {
            let cost = dtw_cost(query, template)?;
            Ok((label.clone(), scaled_absement(cost, template.frames())?))
        })
        .collect::<Result<Vec<_>>>()?;

    ranked.sort_by(|a, b| {
        a.1.partial_cmp(&b.1)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.0.cmp(&b.0))
    });

    Ok(RecognitionResult {
        query_label: None,
        ranked,
        k,
    })
}

/// Accuracy report over a labeled query set.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport<S> {
    pub n_queries: usize,
    pub k: usize,
    /// Fraction of queries whose rank-1 word equals the query label.
    pub top1_accuracy: f64,
    /// Fraction of queries whose label appears in the top k.
    pub topk_accuracy: f64,
    pub per_query: Vec<RecognitionResult<S>>,
}

impl<S: Scalar> EvalReport<S> {
    /// CSV rows `query,rank,word,scaled_absement`, top-k entries per query.
    pub fn write_per_query_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "query,rank,word,scaled_absement")?;
        for result in &self.per_query {
            let query = result.query_label.as_deref().unwrap_or("");
            for (rank, (word, value)) in result.top_k().iter().enumerate() {
                writeln!(out, "{query},{},{word},{value}", rank + 1)?;
            }
        }
        Ok(())
    }

    /// Single-row summary CSV `n,top1,topk,k`.
    pub fn write_summary_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "n,top1,topk,k")?;
        writeln!(
            out,
            "{},{},{},{}",
            self.n_queries, self.top1_accuracy, self.topk_accuracy, self.k
        )
    }
}

/// Recognize every labeled query and count top-1 / top-k hits.
pub fn evaluate<S: Scalar>(
    queries: &[(String, FeatureMatrix<S>)],
    lexicon: &Lexicon<S>,
    k: usize,
) -> Result<EvalReport<S>> {
    if queries.is_empty() {
        return Err(Error::EmptyInput("evaluation queries"));
    }
    for (label, _) in queries {
        if !lexicon.contains(label) {
            return Err(Error::UnknownLabel(label.clone()));
        }
    }

    let per_query = queries
        .par_iter()
        .map(|(label, query)| -> Result<RecognitionResult<S>> {
            let mut result = recognize(query, lexicon, k)?;
            result.query_label = Some(label.clone());
            Ok(result)
        })
        .collect::<Result<Vec<_>>>()?;

    let n = per_query.len();
    let top1 = per_query
        .iter()
        .filter(|r| Some(r.best()) == r.query_label.as_deref())
        .count();
    let topk = per_query
        .iter()
        .filter(|r| {
            let label = r.query_label.as_deref();
            r.top_k()
                .iter()
                .any(|(word, _)| Some(word.as_str()) == label)
        })
        .count();

    Ok(EvalReport {
        n_queries: n,
        k,
        top1_accuracy: top1 as f64 / n as f64,
        topk_accuracy: topk as f64 / n as f64,
        per_query,
    })
}
