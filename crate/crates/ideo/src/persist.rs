//! Save and load trained pipelines as `.ideomodel` files.
//!
//! The format is a single pretty-printed JSON document with an explicit
//! `format_version`. Field order is fixed by the schema structs below,
//! matrices are flattened row-major, and floats are written in the
//! shortest representation that parses back to the identical 64-bit
//! value — so save → load → save is byte-identical and loaded models
//! predict bit-identically.
//!
//! The version is probed before the full parse, so a file from a newer
//! format fails with a version error rather than a confusing field error.

use std::path::Path;

use ndarray::{Array1, Array2};
use serde::{Deserialize, Serialize};

use crate::classical::{LinearSvmModel, NaiveBayesModel, NbParams, SvmConfig};
use crate::embedding::{EmbeddingMatrix, EmbeddingVocabulary};
use crate::error::{Error, Result};
use crate::neural::{GateParam, RnnConfig, RnnParams};
use crate::pipeline::{
    ExtractorState, FeatureKind, HyperParams, ModelKind, ModelParams, TrainedPipeline,
};
use crate::preprocess::PreprocessConfig;
use crate::stylometric::StandardScaler;
use crate::tfidf::{TfidfConfig, TfidfVectorizer};

/// The one format this build reads and writes.
pub const FORMAT_VERSION: u64 = 1;

// ---------------------------------------------------------------------
// File schema. These structs are the written format — their field order
// and names are the contract documented in docs/model-format.md.
// ---------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format_version: u64,
    feature: FeatureKind,
    model: ModelKind,
    class_names: Vec<String>,
    preprocess: PreprocessConfig,
    extractor: ExtractorFile,
    model_params: ModelParamsFile,
    training: TrainingMeta,
}

#[derive(Serialize, Deserialize)]
struct TrainingMeta {
    seed: u64,
    hyperparams: HyperParams,
    corpus_fingerprint: String,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum ExtractorFile {
    Stylometric {
        means: Vec<f64>,
        stds: Vec<f64>,
    },
    Tfidf {
        config: TfidfConfig,
        vocabulary: Vec<String>,
        idf: Vec<f64>,
    },
    Embedding {
        words: Vec<String>,
        counts: Vec<u64>,
        dim: usize,
        /// `(words.len() + 2) × dim`, row-major, PAD row first.
        rows: Vec<f64>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum ModelParamsFile {
    Svm {
        weights: Vec<f64>,
        bias: f64,
        config: SvmConfig,
    },
    Nb {
        class_log_priors: [f64; 2],
        variant: NbFile,
    },
    Rnn {
        config: RnnConfig,
        gates: Vec<GateFile>,
        /// `2 × hidden_units`, row-major.
        head_w: Vec<f64>,
        head_b: Vec<f64>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum NbFile {
    Multinomial {
        alpha: f64,
        /// `2 × dim`, row-major.
        feature_log_prob: Vec<f64>,
        dim: usize,
    },
    Gaussian {
        /// `2 × dim`, row-major.
        means: Vec<f64>,
        variances: Vec<f64>,
        dim: usize,
    },
}

#[derive(Serialize, Deserialize)]
struct GateFile {
    /// `hidden × input_dim`, row-major.
    w: Vec<f64>,
    /// `hidden × hidden`, row-major.
    u: Vec<f64>,
    b: Vec<f64>,
}

// ---------------------------------------------------------------------
// Domain ↔ schema conversion
// ---------------------------------------------------------------------

fn flatten(m: &Array2<f64>) -> Vec<f64> {
    m.iter().copied().collect()
}

fn unflatten(values: Vec<f64>, rows: usize, cols: usize, what: &str) -> Result<Array2<f64>> {
    Array2::from_shape_vec((rows, cols), values)
        .map_err(|_| Error::InvalidModel(format!("{what} must hold {rows}×{cols} values")))
}

fn ensure_finite<'a>(what: &str, values: impl IntoIterator<Item = &'a f64>) -> Result<()> {
    if values.into_iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidModel(format!(
            "{what} contains a non-finite value"
        )));
    }
    Ok(())
}

fn to_file(pipeline: &TrainedPipeline) -> Result<ModelFile> {
    let extractor = match &pipeline.extractor {
        ExtractorState::Stylometric { scaler } => ExtractorFile::Stylometric {
            means: scaler.means().to_vec(),
            stds: scaler.stds().to_vec(),
        },
        ExtractorState::Tfidf { vectorizer } => ExtractorFile::Tfidf {
            config: vectorizer.config().clone(),
            vocabulary: vectorizer.vocabulary().to_vec(),
            idf: vectorizer.idf().to_vec(),
        },
        ExtractorState::Embedding { vocab, matrix } => ExtractorFile::Embedding {
            words: vocab.words().to_vec(),
            counts: vocab.counts().to_vec(),
            dim: matrix.dim(),
            rows: flatten(matrix.rows()),
        },
    };
    let model_params = match &pipeline.model_params {
        ModelParams::Svm(m) => {
            ensure_finite("svm weights", m.weights.iter())?;
            ModelParamsFile::Svm {
                weights: m.weights.to_vec(),
                bias: m.bias,
                config: m.config.clone(),
            }
        }
        ModelParams::Nb(m) => ModelParamsFile::Nb {
            class_log_priors: m.class_log_priors,
            variant: match &m.params {
                NbParams::Multinomial {
                    alpha,
                    feature_log_prob,
                } => NbFile::Multinomial {
                    alpha: *alpha,
                    feature_log_prob: flatten(feature_log_prob),
                    dim: feature_log_prob.ncols(),
                },
                NbParams::Gaussian { means, variances } => NbFile::Gaussian {
                    means: flatten(means),
                    variances: flatten(variances),
                    dim: means.ncols(),
                },
            },
        },
        ModelParams::Rnn { config, params } => {
            for gate in &params.gates {
                ensure_finite(
                    "rnn gate weights",
                    gate.w.iter().chain(gate.u.iter()).chain(gate.b.iter()),
                )?;
            }
            ensure_finite("rnn head", params.head_w.iter().chain(params.head_b.iter()))?;
            ModelParamsFile::Rnn {
                config: config.clone(),
                gates: params
                    .gates
                    .iter()
                    .map(|g| GateFile {
                        w: flatten(&g.w),
                        u: flatten(&g.u),
                        b: g.b.to_vec(),
                    })
                    .collect(),
                head_w: flatten(&params.head_w),
                head_b: params.head_b.to_vec(),
            }
        }
    };
    Ok(ModelFile {
        format_version: FORMAT_VERSION,
        feature: pipeline.feature,
        model: pipeline.model,
        class_names: pipeline.class_names.clone(),
        preprocess: pipeline.preprocess.clone(),
        extractor,
        model_params,
        training: TrainingMeta {
            seed: pipeline.params.seed,
            hyperparams: pipeline.params.clone(),
            corpus_fingerprint: pipeline.corpus_fingerprint.clone(),
        },
    })
}

fn from_file(file: ModelFile) -> Result<TrainedPipeline> {
    if file.class_names.len() != 2 {
        return Err(Error::InvalidModel(format!(
            "expected 2 class names, found {}",
            file.class_names.len()
        )));
    }
    if file.training.seed != file.training.hyperparams.seed {
        return Err(Error::InvalidModel(
            "training seed disagrees with hyperparams.seed".into(),
        ));
    }
    let preprocess = PreprocessConfig::new(
        file.preprocess.script_ranges.clone(),
        file.preprocess.stopwords.clone(),
    )
    .map_err(|e| Error::InvalidModel(format!("preprocess config: {e}")))?;

    let extractor = match file.extractor {
        ExtractorFile::Stylometric { means, stds } => ExtractorState::Stylometric {
            scaler: StandardScaler::from_parts(means, stds)?,
        },
        ExtractorFile::Tfidf {
            config,
            vocabulary,
            idf,
        } => ExtractorState::Tfidf {
            vectorizer: TfidfVectorizer::from_parts(config, vocabulary, idf)?,
        },
        ExtractorFile::Embedding {
            words,
            counts,
            dim,
            rows,
        } => {
            let vocab = EmbeddingVocabulary::from_parts(words, counts)?;
            let matrix = unflatten(rows, vocab.n_rows(), dim, "embedding rows")?;
            ExtractorState::Embedding {
                vocab,
                matrix: EmbeddingMatrix::from_rows(matrix)?,
            }
        }
    };

    let model_params = match file.model_params {
        ModelParamsFile::Svm {
            weights,
            bias,
            config,
        } => {
            ensure_finite("svm weights", weights.iter().chain([&bias]))?;
            ModelParams::Svm(LinearSvmModel {
                weights: Array1::from(weights),
                bias,
                config,
            })
        }
        ModelParamsFile::Nb {
            class_log_priors,
            variant,
        } => {
            let params = match variant {
                NbFile::Multinomial {
                    alpha,
                    feature_log_prob,
                    dim,
                } => NbParams::Multinomial {
                    alpha,
                    feature_log_prob: unflatten(feature_log_prob, 2, dim, "feature_log_prob")?,
                },
                NbFile::Gaussian {
                    means,
                    variances,
                    dim,
                } => {
                    let variances = unflatten(variances, 2, dim, "variances")?;
                    if variances.iter().any(|&v| v <= 0.0) {
                        return Err(Error::InvalidModel(
                            "gaussian variances must be positive".into(),
                        ));
                    }
                    NbParams::Gaussian {
                        means: unflatten(means, 2, dim, "means")?,
                        variances,
                    }
                }
            };
            ModelParams::Nb(NaiveBayesModel {
                class_log_priors,
                params,
            })
        }
        ModelParamsFile::Rnn {
            config,
            gates,
            head_w,
            head_b,
        } => {
            config
                .validate()
                .map_err(|e| Error::InvalidModel(e.to_string()))?;
            if gates.len() != config.cell.n_gates() {
                return Err(Error::InvalidModel(format!(
                    "{:?} cell needs {} gates, found {}",
                    config.cell,
                    config.cell.n_gates(),
                    gates.len()
                )));
            }
            let h = config.hidden_units;
            let mut gate_params = Vec::with_capacity(gates.len());
            for gate in gates {
                ensure_finite(
                    "rnn gate",
                    gate.w.iter().chain(gate.u.iter()).chain(gate.b.iter()),
                )?;
                if gate.b.len() != h {
                    return Err(Error::InvalidModel(format!(
                        "gate bias must hold {h} values"
                    )));
                }
                gate_params.push(GateParam {
                    w: unflatten(gate.w, h, config.input_dim, "gate w")?,
                    u: unflatten(gate.u, h, h, "gate u")?,
                    b: Array1::from(gate.b),
                });
            }
            ensure_finite("rnn head", head_w.iter().chain(head_b.iter()))?;
            if head_b.len() != 2 {
                return Err(Error::InvalidModel("head bias must hold 2 values".into()));
            }
            ModelParams::Rnn {
                config,
                params: RnnParams {
                    gates: gate_params,
                    head_w: unflatten(head_w, 2, h, "head w")?,
                    head_b: Array1::from(head_b),
                },
            }
        }
    };

    // The stored extractor must agree with the declared feature kind.
    let kind_matches = matches!(
        (&extractor, file.feature),
        (ExtractorState::Stylometric { .. }, FeatureKind::Stylometric)
            | (ExtractorState::Tfidf { .. }, FeatureKind::Tfidf)
            | (ExtractorState::Embedding { .. }, FeatureKind::Embedding)
    );
    if !kind_matches {
        return Err(Error::InvalidModel(
            "extractor kind disagrees with the feature field".into(),
        ));
    }
    let model_matches = matches!(
        (&model_params, file.model),
        (ModelParams::Svm(_), ModelKind::Svm)
            | (ModelParams::Nb(_), ModelKind::Nb)
            | (ModelParams::Rnn { .. }, ModelKind::Lstm)
            | (ModelParams::Rnn { .. }, ModelKind::Gru)
    );
    if !model_matches {
        return Err(Error::InvalidModel(
            "stored parameters disagree with the model field".into(),
        ));
    }

    Ok(TrainedPipeline {
        feature: file.feature,
        model: file.model,
        preprocess,
        params: file.training.hyperparams,
        extractor,
        model_params,
        class_names: file.class_names,
        corpus_fingerprint: file.training.corpus_fingerprint,
    })
}

// ---------------------------------------------------------------------
// save / load
// ---------------------------------------------------------------------

/// Render a pipeline into the `.ideomodel` text form (what [`save`]
/// writes). Deterministic: equal pipelines render to equal bytes.
pub fn to_model_text(pipeline: &TrainedPipeline) -> Result<String> {
    let file = to_file(pipeline)?;
    let mut text = serde_json::to_string_pretty(&file)
        .map_err(|e| Error::InvalidModel(format!("serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Write a trained pipeline to `path`.
pub fn save(pipeline: &TrainedPipeline, path: &Path) -> Result<()> {
    let text = to_model_text(pipeline)?;
    std::fs::write(path, text).map_err(|e| Error::io(path.display().to_string(), e))
}

fn parse_error(path: &Path, text: &str, e: &serde_json::Error) -> Error {
    let line = e.line();
    let column = e.column();
    let offset = if line == 0 {
        0
    } else {
        text.split_inclusive('\n')
            .take(line - 1)
            .map(str::len)
            .sum::<usize>()
            + column.saturating_sub(1)
    };
    Error::Parse {
        path: path.display().to_string(),
        offset,
        line,
        column,
        message: e.to_string(),
    }
}

/// Parse `.ideomodel` text (the dual of [`to_model_text`]).
pub fn from_model_text(path: &Path, text: &str) -> Result<TrainedPipeline> {
    #[derive(Deserialize)]
    struct VersionProbe {
        format_version: u64,
    }
    let probe: VersionProbe =
        serde_json::from_str(text).map_err(|e| parse_error(path, text, &e))?;
    if probe.format_version != FORMAT_VERSION {
        return Err(Error::VersionMismatch {
            found: probe.format_version,
            expected: FORMAT_VERSION,
        });
    }
    let file: ModelFile = serde_json::from_str(text).map_err(|e| parse_error(path, text, &e))?;
    from_file(file)
}

/// Read a trained pipeline back from `path`.
pub fn load(path: &Path) -> Result<TrainedPipeline> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    let text = String::from_utf8(bytes).map_err(|e| {
        let offset = e.utf8_error().valid_up_to();
        Error::Parse {
            path: path.display().to_string(),
            offset,
            line: 0,
            column: 0,
            message: "file is not valid UTF-8".into(),
        }
    })?;
    from_model_text(path, &text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::stratified_split;
    use crate::pipeline::train_pipeline;
    use crate::synthetic::{two_topic_corpus, TwoTopicSpec};

    fn trained(feature: FeatureKind, model: ModelKind) -> TrainedPipeline {
        let spec = TwoTopicSpec {
            docs_per_class: 12,
            ..TwoTopicSpec::default()
        };
        let corpus = two_topic_corpus(&spec);
        let split = stratified_split(&corpus, 0.25, 3).unwrap();
        let params = HyperParams {
            embed_dim: 6,
            w2v_epochs: 1,
            hidden_units: 4,
            rnn_epochs: 2,
            sequence_length: 30,
            svm_epochs: 10,
            tfidf_max_features: 60,
            ..HyperParams::default()
        };
        train_pipeline(
            &corpus,
            &split.train_indices,
            feature,
            model,
            &PreprocessConfig::default(),
            &params,
        )
        .unwrap()
    }

    #[test]
    fn round_trip_is_structurally_equal_and_byte_stable() {
        let dir = tempfile::tempdir().unwrap();
        for (feature, model) in [
            (FeatureKind::Stylometric, ModelKind::Svm),
            (FeatureKind::Tfidf, ModelKind::Nb),
            (FeatureKind::Embedding, ModelKind::Lstm),
        ] {
            let pipeline = trained(feature, model);
            let path = dir.path().join(format!("{feature}-{model}.ideomodel"));
            save(&pipeline, &path).unwrap();
            let loaded = load(&path).unwrap();
            assert_eq!(loaded, pipeline, "{feature}+{model} round trip");
            // save → load → save is byte-identical
            let first = std::fs::read(&path).unwrap();
            let path2 = dir.path().join("again.ideomodel");
            save(&loaded, &path2).unwrap();
            let second = std::fs::read(&path2).unwrap();
            assert_eq!(first, second, "{feature}+{model} byte stability");
        }
    }

    #[test]
    fn loaded_model_predicts_identically() {
        let dir = tempfile::tempdir().unwrap();
        let pipeline = trained(FeatureKind::Embedding, ModelKind::Gru);
        let path = dir.path().join("m.ideomodel");
        save(&pipeline, &path).unwrap();
        let loaded = load(&path).unwrap();
        for text in ["ভালো খবর আজ", "", "রাজনীতি ১২৩!!!"] {
            let (c1, s1) = pipeline.predict(text);
            let (c2, s2) = loaded.predict(text);
            assert_eq!(c1, c2);
            assert_eq!(s1.to_bits(), s2.to_bits());
        }
    }

    #[test]
    fn future_version_is_rejected_before_schema_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v999.ideomodel");
        // deliberately missing every other field: the version check must
        // fire before field validation ever runs
        std::fs::write(&path, "{\n  \"format_version\": 999\n}\n").unwrap();
        match load(&path) {
            Err(Error::VersionMismatch {
                found: 999,
                expected: 1,
            }) => {}
            other => panic!("expected version mismatch, got {other:?}"),
        }
    }

    #[test]
    fn truncated_file_reports_a_byte_offset() {
        let dir = tempfile::tempdir().unwrap();
        let pipeline = trained(FeatureKind::Stylometric, ModelKind::Nb);
        let path = dir.path().join("whole.ideomodel");
        save(&pipeline, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let cut = text.len() / 2;
        let truncated_path = dir.path().join("cut.ideomodel");
        std::fs::write(&truncated_path, &text[..cut]).unwrap();
        match load(&truncated_path) {
            Err(Error::Parse { offset, line, .. }) => {
                assert!(offset > 0 && offset <= cut, "offset {offset} out of range");
                assert!(line >= 1);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn tampered_contents_are_rejected() {
        let pipeline = trained(FeatureKind::Tfidf, ModelKind::Svm);
        let text = to_model_text(&pipeline).unwrap();
        let path = Path::new("tampered.ideomodel");

        // extractor kind that disagrees with the feature field
        let swapped = text.replace("\"feature\": \"tfidf\"", "\"feature\": \"stylometric\"");
        assert!(matches!(
            from_model_text(path, &swapped),
            Err(Error::InvalidModel(_))
        ));

        // unknown model kind is a parse error, not a panic
        let bad_kind = text.replace("\"model\": \"svm\"", "\"model\": \"oracle\"");
        assert!(matches!(
            from_model_text(path, &bad_kind),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn missing_file_reports_the_path() {
        match load(Path::new("/nonexistent/dir/m.ideomodel")) {
            Err(Error::Io { path, .. }) => assert!(path.contains("m.ideomodel")),
            other => panic!("expected io error, got {other:?}"),
        }
    }
}
