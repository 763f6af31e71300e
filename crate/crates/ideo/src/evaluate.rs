//! Classification metrics and the feature × model comparison grid.
//!
//! Zero-denominator rule: a precision or recall whose denominator is zero
//! (no predictions / no true samples for that class) is defined as 0, and
//! an F1 whose precision + recall is zero is 0.

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Split};
use crate::error::{Error, Result};
use crate::pipeline::{train_pipeline, FeatureKind, HyperParams, ModelKind};
use crate::preprocess::PreprocessConfig;

/// 2×2 contingency counts indexed `[true][predicted]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub counts: [[usize; 2]; 2],
}

impl ConfusionMatrix {
    /// Tally paired labels. Errors on empty or mismatched inputs or on a
    /// label outside {0, 1}.
    pub fn from_pairs(y_true: &[usize], y_pred: &[usize]) -> Result<Self> {
        if y_true.is_empty() {
            return Err(Error::Pipeline("cannot score an empty label set".into()));
        }
        if y_true.len() != y_pred.len() {
            return Err(Error::DimensionMismatch {
                expected: y_true.len(),
                found: y_pred.len(),
            });
        }
        let mut counts = [[0usize; 2]; 2];
        for (&t, &p) in y_true.iter().zip(y_pred) {
            if t > 1 || p > 1 {
                return Err(Error::Pipeline(format!(
                    "labels must be 0 or 1, found ({t}, {p})"
                )));
            }
            counts[t][p] += 1;
        }
        Ok(ConfusionMatrix { counts })
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    /// Correct predictions: the diagonal.
    pub fn trace(&self) -> usize {
        self.counts[0][0] + self.counts[1][1]
    }
}

/// Standard binary classification metrics; `macro_f1` is the headline
/// number (per-class and weighted variants are reported alongside).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub accuracy: f64,
    pub precision: [f64; 2],
    pub recall: [f64; 2],
    pub f1: [f64; 2],
    pub macro_f1: f64,
    pub weighted_f1: f64,
    pub n_samples: usize,
    pub confusion: ConfusionMatrix,
}

fn ratio(num: usize, denom: usize) -> f64 {
    if denom == 0 {
        0.0
    } else {
        num as f64 / denom as f64
    }
}

/// Compute all metrics from paired label lists.
pub fn score(y_true: &[usize], y_pred: &[usize]) -> Result<MetricsReport> {
    let confusion = ConfusionMatrix::from_pairs(y_true, y_pred)?;
    let n = confusion.total();
    let mut precision = [0.0; 2];
    let mut recall = [0.0; 2];
    let mut f1 = [0.0; 2];
    let mut support = [0usize; 2];
    for c in 0..2 {
        let tp = confusion.counts[c][c];
        let predicted_c = confusion.counts[0][c] + confusion.counts[1][c];
        support[c] = confusion.counts[c][0] + confusion.counts[c][1];
        precision[c] = ratio(tp, predicted_c);
        recall[c] = ratio(tp, support[c]);
        f1[c] = if precision[c] + recall[c] > 0.0 {
            2.0 * precision[c] * recall[c] / (precision[c] + recall[c])
        } else {
            0.0
        };
    }
    Ok(MetricsReport {
        accuracy: confusion.trace() as f64 / n as f64,
        precision,
        recall,
        f1,
        macro_f1: (f1[0] + f1[1]) / 2.0,
        weighted_f1: (f1[0] * support[0] as f64 + f1[1] * support[1] as f64) / n as f64,
        n_samples: n,
        confusion,
    })
}

/// One grid cell: a (feature, model) pairing with either its test metrics
/// or the error that stopped it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridCell {
    pub feature: FeatureKind,
    pub model: ModelKind,
    pub metrics: Option<MetricsReport>,
    pub error: Option<String>,
}

/// All 12 cells in feature-major order, plus the best cell by accuracy
/// (ties broken by macro-F1, then grid order).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridReport {
    pub cells: Vec<GridCell>,
    pub best: Option<(FeatureKind, ModelKind)>,
}

impl GridReport {
    pub fn cell(&self, feature: FeatureKind, model: ModelKind) -> &GridCell {
        self.cells
            .iter()
            .find(|c| c.feature == feature && c.model == model)
            .expect("grid always holds all 12 cells")
    }
}

/// Train and score every feature × model combination on one split.
///
/// Each cell fits its extractor on the train side only, trains its model,
/// and scores the test side. A failing cell records its error without
/// stopping the others.
pub fn run_grid(
    corpus: &Corpus,
    split: &Split,
    preprocess: &PreprocessConfig,
    params: &HyperParams,
) -> GridReport {
    let mut cells = Vec::with_capacity(12);
    for feature in FeatureKind::ALL {
        for model in ModelKind::ALL {
            let outcome = train_pipeline(
                corpus,
                &split.train_indices,
                feature,
                model,
                preprocess,
                params,
            )
            .and_then(|pipeline| {
                let mut y_true = Vec::with_capacity(split.test_indices.len());
                let mut y_pred = Vec::with_capacity(split.test_indices.len());
                for &i in &split.test_indices {
                    let doc = &corpus.documents()[i];
                    y_true.push(doc.label);
                    y_pred.push(pipeline.predict(&doc.text).0);
                }
                score(&y_true, &y_pred)
            });
            cells.push(match outcome {
                Ok(metrics) => GridCell {
                    feature,
                    model,
                    metrics: Some(metrics),
                    error: None,
                },
                Err(e) => GridCell {
                    feature,
                    model,
                    metrics: None,
                    error: Some(e.to_string()),
                },
            });
        }
    }
    let best = cells
        .iter()
        .filter_map(|c| {
            c.metrics
                .as_ref()
                .map(|m| (c.feature, c.model, m.accuracy, m.macro_f1))
        })
        .fold(
            None::<(FeatureKind, ModelKind, f64, f64)>,
            |acc, cand| match acc {
                Some(best) if (best.2, best.3) >= (cand.2, cand.3) => Some(best),
                _ => Some(cand),
            },
        )
        .map(|(f, m, _, _)| (f, m));
    GridReport { cells, best }
}
