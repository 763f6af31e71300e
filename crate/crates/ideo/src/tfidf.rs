//! Term-frequency / inverse-document-frequency features over word n-grams.
//!
//! The vectorizer is fitted on preprocessed token sequences: it collects
//! unigrams and bigrams (configurable range), keeps the most frequent
//! terms, and weights each document's raw term counts by a smoothed
//! inverse document frequency before L2-normalizing.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::preprocess::TokenSequence;

/// Vectorizer settings. `ngram_range = (lo, hi)` means every n-gram length
/// in `lo..=hi` contributes terms; multi-word terms join tokens with a
/// single space.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TfidfConfig {
    pub max_features: usize,
    pub ngram_range: (usize, usize),
}

impl Default for TfidfConfig {
    fn default() -> Self {
        TfidfConfig {
            max_features: 1000,
            ngram_range: (1, 2),
        }
    }
}

impl TfidfConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_features == 0 {
            return Err(Error::InvalidConfig("max_features must be positive".into()));
        }
        let (lo, hi) = self.ngram_range;
        if lo == 0 || lo > hi {
            return Err(Error::InvalidConfig(format!(
                "ngram range ({lo}, {hi}) must satisfy 1 <= lo <= hi"
            )));
        }
        Ok(())
    }
}

/// A document as a sparse weighted vector. `indices` are strictly
/// increasing positions into a `dim`-sized space; `values` aligns with
/// `indices`.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SparseVector {
    pub indices: Vec<usize>,
    pub values: Vec<f64>,
    pub dim: usize,
}

impl SparseVector {
    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (&i, &v) in self.indices.iter().zip(self.values.iter()) {
            out[i] = v;
        }
        out
    }

    pub fn l2_norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Enumerate the space-joined n-grams of `tokens` for each length in the
/// inclusive range.
pub fn ngrams(tokens: &[String], range: (usize, usize)) -> Vec<String> {
    let (lo, hi) = range;
    let mut out = Vec::new();
    for n in lo..=hi {
        if n == 0 || n > tokens.len() {
            continue;
        }
        for window in tokens.windows(n) {
            out.push(window.join(" "));
        }
    }
    out
}

/// Fitted vocabulary and idf weights.
#[derive(Debug, Clone, PartialEq)]
pub struct TfidfVectorizer {
    config: TfidfConfig,
    /// Terms in index order (lexicographic).
    vocabulary: Vec<String>,
    /// Smoothed idf per vocabulary index.
    idf: Vec<f64>,
    index: HashMap<String, usize>,
}

/// Select the vocabulary and compute idf values from training documents.
///
/// Term selection ranks by total corpus count descending, breaking ties
/// lexicographically ascending, keeps the top `max_features`, then assigns
/// indices in lexicographic order of the surviving terms.
pub fn fit_tfidf(docs: &[TokenSequence], config: &TfidfConfig) -> Result<TfidfVectorizer> {
    config.validate()?;
    if docs.is_empty() {
        return Err(Error::EmptyFit);
    }

    let mut total_counts: BTreeMap<String, u64> = BTreeMap::new();
    let mut doc_freq: HashMap<String, u64> = HashMap::new();
    let mut any_terms = false;
    for doc in docs {
        let terms = ngrams(&doc.tokens, config.ngram_range);
        if !terms.is_empty() {
            any_terms = true;
        }
        let mut seen: BTreeMap<&str, ()> = BTreeMap::new();
        for term in &terms {
            *total_counts.entry(term.clone()).or_insert(0) += 1;
            seen.entry(term).or_insert(());
        }
        for (term, ()) in seen {
            *doc_freq.entry(term.to_string()).or_insert(0) += 1;
        }
    }
    if !any_terms {
        return Err(Error::AllDocumentsEmpty);
    }

    // BTreeMap iteration is lexicographic, so a stable sort by count
    // descending leaves ties in ascending term order.
    let mut ranked: Vec<(&String, u64)> = total_counts.iter().map(|(t, &c)| (t, c)).collect();
    ranked.sort_by_key(|&(_, count)| std::cmp::Reverse(count));
    ranked.truncate(config.max_features);

    let mut vocabulary: Vec<String> = ranked.into_iter().map(|(t, _)| t.clone()).collect();
    vocabulary.sort();

    let n = docs.len() as f64;
    let idf: Vec<f64> = vocabulary
        .iter()
        .map(|term| {
            let df = doc_freq[term] as f64;
            ((1.0 + n) / (1.0 + df)).ln() + 1.0
        })
        .collect();

    let index = vocabulary
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();

    Ok(TfidfVectorizer {
        config: config.clone(),
        vocabulary,
        idf,
        index,
    })
}

impl TfidfVectorizer {
    /// Weight a document: raw term count × idf, then L2-normalize.
    /// Out-of-vocabulary terms are ignored; a document with no known terms
    /// maps to the zero vector.
    pub fn transform(&self, doc: &TokenSequence) -> SparseVector {
        let mut counts: BTreeMap<usize, f64> = BTreeMap::new();
        for term in ngrams(&doc.tokens, self.config.ngram_range) {
            if let Some(&i) = self.index.get(&term) {
                *counts.entry(i).or_insert(0.0) += 1.0;
            }
        }
        let mut indices = Vec::with_capacity(counts.len());
        let mut values = Vec::with_capacity(counts.len());
        for (i, tf) in counts {
            indices.push(i);
            values.push(tf * self.idf[i]);
        }
        let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            for v in &mut values {
                *v /= norm;
            }
        }
        SparseVector {
            indices,
            values,
            dim: self.vocabulary.len(),
        }
    }

    pub fn vocabulary(&self) -> &[String] {
        &self.vocabulary
    }

    pub fn idf(&self) -> &[f64] {
        &self.idf
    }

    pub fn config(&self) -> &TfidfConfig {
        &self.config
    }

    pub fn dim(&self) -> usize {
        self.vocabulary.len()
    }

    /// Reassemble from stored state (used when loading a saved model).
    pub fn from_parts(config: TfidfConfig, vocabulary: Vec<String>, idf: Vec<f64>) -> Result<Self> {
        config.validate()?;
        if vocabulary.len() != idf.len() {
            return Err(Error::InvalidModel(format!(
                "vocabulary has {} terms but {} idf values",
                vocabulary.len(),
                idf.len()
            )));
        }
        if vocabulary.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidModel(
                "vocabulary must be strictly increasing".into(),
            ));
        }
        let index = vocabulary
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Ok(TfidfVectorizer {
            config,
            vocabulary,
            idf,
            index,
        })
    }
}
