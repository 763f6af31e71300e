//! Labeled text corpora: CSV/TSV ingestion, stratified splitting and class
//! statistics.
//!
//! Input files are RFC-4180 CSV (or tab-separated) with a header row that
//! contains at least the columns `text` and `label`. Label strings are
//! mapped to class indices in sorted order, independent of row order, so
//! the same file always produces the same `Corpus`.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// One labeled sample. `text` is raw and may be empty; `label` indexes the
/// owning corpus's `class_names`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub label: usize,
}

/// Input table flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Tsv,
}

impl TableFormat {
    fn delimiter(self) -> u8 {
        match self {
            TableFormat::Csv => b',',
            TableFormat::Tsv => b'\t',
        }
    }

    /// Infer from a file extension; `.tsv` means tab-separated, anything
    /// else is treated as comma-separated.
    pub fn from_path(path: impl AsRef<Path>) -> TableFormat {
        match path.as_ref().extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("tsv") => TableFormat::Tsv,
            _ => TableFormat::Csv,
        }
    }
}

/// An immutable ordered collection of documents plus its label dictionary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    documents: Vec<Document>,
    class_names: Vec<String>,
    source_path: String,
}

impl Corpus {
    /// Assemble a corpus in memory. Every document label must index into
    /// `class_names`.
    pub fn from_documents(
        documents: Vec<Document>,
        class_names: Vec<String>,
        source_path: impl Into<String>,
    ) -> Result<Self> {
        if class_names.is_empty() {
            return Err(Error::InvalidConfig("class_names must be non-empty".into()));
        }
        if let Some(doc) = documents.iter().find(|d| d.label >= class_names.len()) {
            return Err(Error::InvalidConfig(format!(
                "document {} has label {} but there are only {} classes",
                doc.id,
                doc.label,
                class_names.len()
            )));
        }
        Ok(Corpus {
            documents,
            class_names,
            source_path: source_path.into(),
        })
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn source_path(&self) -> &str {
        &self.source_path
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.class_names.len()
    }
}

/// Train/test index partition produced by [`stratified_split`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub train_indices: Vec<usize>,
    pub test_indices: Vec<usize>,
    pub seed: u64,
}

/// Load a labeled corpus from a delimited file.
///
/// The header must contain `text` and `label` columns (extra columns are
/// ignored). Class names are the sorted distinct label strings; document
/// ids are `row-<k>` with `k` the 0-based data-row number.
pub fn load_corpus(path: impl AsRef<Path>, format: TableFormat) -> Result<Corpus> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(format.delimiter())
        .flexible(false)
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(display.clone(), io),
            other => Error::Pipeline(format!("{display}: {other:?}")),
        })?;

    let headers = reader
        .headers()
        .map_err(|e| Error::Pipeline(format!("{display}: cannot read header: {e}")))?;
    let text_col = headers
        .iter()
        .position(|h| h == "text")
        .ok_or(Error::MissingColumn("text"))?;
    let label_col = headers
        .iter()
        .position(|h| h == "label")
        .ok_or(Error::MissingColumn("label"))?;

    let mut rows: Vec<(String, String)> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| match e.kind() {
            csv::ErrorKind::UnequalLengths {
                pos,
                expected_len,
                len,
            } => Error::MalformedRow {
                line: pos.as_ref().map(|p| p.line()).unwrap_or(0),
                expected: *expected_len,
                found: *len,
            },
            _ => Error::Pipeline(format!("{display}: {e}")),
        })?;
        let text = record.get(text_col).unwrap_or("").to_owned();
        let label = record.get(label_col).unwrap_or("").to_owned();
        rows.push((text, label));
    }

    if rows.is_empty() {
        return Err(Error::ZeroDataRows { path: display });
    }

    let mut class_names: Vec<String> = rows.iter().map(|(_, l)| l.clone()).collect();
    class_names.sort();
    class_names.dedup();

    let documents = rows
        .into_iter()
        .enumerate()
        .map(|(k, (text, label))| {
            // binary_search is safe: class_names is sorted and contains every label.
            let label = class_names.binary_search(&label).unwrap();
            Document {
                id: format!("row-{k}"),
                text,
                label,
            }
        })
        .collect();

    Corpus::from_documents(documents, class_names, display)
}

/// Write a corpus back out in the same shape [`load_corpus`] reads
/// (`text,label` header, RFC-4180 quoting).
pub fn write_corpus(corpus: &Corpus, path: impl AsRef<Path>, format: TableFormat) -> Result<()> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let mut writer = csv::WriterBuilder::new()
        .delimiter(format.delimiter())
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(display.clone(), io),
            other => Error::Pipeline(format!("{display}: {other:?}")),
        })?;
    writer
        .write_record(["text", "label"])
        .and_then(|_| {
            for doc in corpus.documents() {
                writer.write_record([doc.text.as_str(), &corpus.class_names()[doc.label]])?;
            }
            writer.flush()?;
            Ok(())
        })
        .map_err(|e| Error::Pipeline(format!("{display}: {e}")))
}

/// Deterministic stratified train/test split.
///
/// Per class, the test count is `round(class_count × test_fraction)`
/// (half away from zero); membership is decided by a Fisher–Yates shuffle
/// of each class's indices driven by a single SplitMix64 stream seeded with
/// `seed` (classes visited in label order). Both index lists are returned
/// in ascending order.
pub fn stratified_split(corpus: &Corpus, test_fraction: f64, seed: u64) -> Result<Split> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "test_fraction must lie in (0,1), got {test_fraction}"
        )));
    }

    let mut per_class: Vec<Vec<usize>> = vec![Vec::new(); corpus.num_classes()];
    for (idx, doc) in corpus.documents().iter().enumerate() {
        per_class[doc.label].push(idx);
    }
    for (label, members) in per_class.iter().enumerate() {
        if !members.is_empty() && members.len() < 2 {
            return Err(Error::ClassTooSmall {
                class: corpus.class_names()[label].clone(),
                count: members.len(),
            });
        }
    }

    let mut rng = SplitMix64::new(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for members in &mut per_class {
        let take = (members.len() as f64 * test_fraction).round() as usize;
        rng.shuffle(members);
        test.extend_from_slice(&members[..take]);
        train.extend_from_slice(&members[take..]);
    }

    if test.is_empty() {
        return Err(Error::DegenerateSplit {
            fraction: test_fraction,
            side: "test",
        });
    }
    if train.is_empty() {
        return Err(Error::DegenerateSplit {
            fraction: test_fraction,
            side: "train",
        });
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok(Split {
        train_indices: train,
        test_indices: test,
        seed,
    })
}

/// Per-class document counts, keyed by class name.
pub fn class_distribution(corpus: &Corpus) -> BTreeMap<String, usize> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for name in corpus.class_names() {
        counts.insert(name.clone(), 0);
    }
    for doc in corpus.documents() {
        *counts
            .get_mut(&corpus.class_names()[doc.label])
            .expect("label indexes class_names") += 1;
    }
    counts
}
