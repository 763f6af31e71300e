//! End-to-end pipelines: a feature extractor paired with a classifier,
//! trained on a document corpus and able to classify raw text.
//!
//! Wiring per combination:
//!
//! | feature      | svm / nb                      | lstm / gru                  |
//! |--------------|-------------------------------|-----------------------------|
//! | stylometric  | scaled 12-vector (nb gaussian)| same vector, one timestep   |
//! | tfidf        | densified weights (nb multinomial) | same vector, one timestep |
//! | embedding    | mean-pooled word vectors (nb gaussian) | index sequence over frozen table |
//!
//! Multinomial NB pairs with TF-IDF because those weights are
//! nonnegative; scaled stylometric and mean-pooled embedding features go
//! negative, so they pair with the gaussian variant.

use ndarray::Array1;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::classical::{
    nb_log_scores, predict_nb, train_nb, train_svm, LinearSvmModel, NaiveBayesModel, NbVariant,
    SvmConfig,
};
use crate::corpus::{Corpus, Document};
use crate::embedding::{
    build_embed_vocab, encode_sequence, mean_pool, train_word2vec, EmbeddingMatrix,
    EmbeddingVocabulary, Word2vecConfig,
};
use crate::error::{Error, Result};
use crate::neural::{self, CellKind, InputMode, RnnConfig, RnnInput, RnnParams, Sample};
use crate::preprocess::{preprocess_document, preprocess_text, PreprocessConfig, TokenSequence};
use crate::stylometric::{extract_stylometric, fit_scaler, StandardScaler};
use crate::tfidf::{fit_tfidf, TfidfConfig, TfidfVectorizer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureKind {
    Stylometric,
    Tfidf,
    Embedding,
}

impl FeatureKind {
    pub const ALL: [FeatureKind; 3] = [
        FeatureKind::Stylometric,
        FeatureKind::Tfidf,
        FeatureKind::Embedding,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FeatureKind::Stylometric => "stylometric",
            FeatureKind::Tfidf => "tfidf",
            FeatureKind::Embedding => "embedding",
        }
    }
}

impl std::fmt::Display for FeatureKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for FeatureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stylometric" => Ok(FeatureKind::Stylometric),
            "tfidf" => Ok(FeatureKind::Tfidf),
            "embedding" => Ok(FeatureKind::Embedding),
            other => Err(Error::InvalidOption {
                key: "feature".into(),
                message: format!(
                    "unknown feature kind {other:?} (expected stylometric, tfidf, or embedding)"
                ),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Svm,
    Nb,
    Lstm,
    Gru,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::Svm,
        ModelKind::Nb,
        ModelKind::Lstm,
        ModelKind::Gru,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Svm => "svm",
            ModelKind::Nb => "nb",
            ModelKind::Lstm => "lstm",
            ModelKind::Gru => "gru",
        }
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "svm" => Ok(ModelKind::Svm),
            "nb" => Ok(ModelKind::Nb),
            "lstm" => Ok(ModelKind::Lstm),
            "gru" => Ok(ModelKind::Gru),
            other => Err(Error::InvalidOption {
                key: "model".into(),
                message: format!("unknown model kind {other:?} (expected svm, nb, lstm, or gru)"),
            }),
        }
    }
}

/// Every tunable of every pipeline stage, in one flat bag so it can be
/// merged from defaults, a config file, and command-line flags, and echoed
/// verbatim into output artifacts. One master seed drives every stochastic
/// stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperParams {
    pub seed: u64,
    // tfidf
    pub tfidf_max_features: usize,
    pub ngram_lo: usize,
    pub ngram_hi: usize,
    // embedding
    pub embed_vocab: usize,
    pub embed_dim: usize,
    pub sequence_length: usize,
    pub w2v_window: usize,
    pub w2v_negatives: usize,
    pub w2v_epochs: usize,
    pub w2v_lr0: f64,
    // svm
    pub svm_lambda: f64,
    pub svm_epochs: usize,
    // naive bayes
    pub nb_alpha: f64,
    // lstm / gru
    pub hidden_units: usize,
    pub rnn_lr: f64,
    pub rnn_rho: f64,
    pub rnn_epsilon: f64,
    pub batch_size: usize,
    pub rnn_epochs: usize,
    pub clip_norm: f64,
}

impl Default for HyperParams {
    fn default() -> Self {
        HyperParams {
            seed: 42,
            tfidf_max_features: 1000,
            ngram_lo: 1,
            ngram_hi: 2,
            embed_vocab: 1000,
            embed_dim: 100,
            sequence_length: 100,
            w2v_window: 5,
            w2v_negatives: 5,
            w2v_epochs: 5,
            w2v_lr0: 0.025,
            svm_lambda: 1e-4,
            svm_epochs: 50,
            nb_alpha: 1.0,
            hidden_units: 300,
            rnn_lr: 1e-3,
            rnn_rho: 0.9,
            rnn_epsilon: 1e-7,
            batch_size: 32,
            rnn_epochs: 10,
            clip_norm: 5.0,
        }
    }
}

impl HyperParams {
    pub fn tfidf_config(&self) -> TfidfConfig {
        TfidfConfig {
            max_features: self.tfidf_max_features,
            ngram_range: (self.ngram_lo, self.ngram_hi),
        }
    }

    pub fn word2vec_config(&self) -> Word2vecConfig {
        Word2vecConfig {
            dim: self.embed_dim,
            window: self.w2v_window,
            negatives: self.w2v_negatives,
            epochs: self.w2v_epochs,
            lr0: self.w2v_lr0,
            seed: self.seed,
        }
    }

    pub fn svm_config(&self) -> SvmConfig {
        SvmConfig {
            lambda: self.svm_lambda,
            epochs: self.svm_epochs,
            seed: self.seed,
        }
    }

    pub fn rnn_config(&self, cell: CellKind, input_mode: InputMode, input_dim: usize) -> RnnConfig {
        RnnConfig {
            cell,
            input_mode,
            input_dim,
            hidden_units: self.hidden_units,
            lr: self.rnn_lr,
            rho: self.rnn_rho,
            epsilon: self.rnn_epsilon,
            batch_size: self.batch_size,
            epochs: self.rnn_epochs,
            clip_norm: self.clip_norm,
            seed: self.seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.tfidf_config().validate()?;
        self.word2vec_config().validate()?;
        if self.embed_vocab == 0 {
            return Err(Error::InvalidConfig("embed_vocab must be positive".into()));
        }
        if self.sequence_length == 0 {
            return Err(Error::InvalidConfig(
                "sequence_length must be positive".into(),
            ));
        }
        if !(self.nb_alpha > 0.0 && self.nb_alpha.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "nb_alpha {} must be positive",
                self.nb_alpha
            )));
        }
        if !(self.svm_lambda > 0.0 && self.svm_lambda.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "svm_lambda {} must be positive",
                self.svm_lambda
            )));
        }
        // placeholder input dim: only the scalar fields are checked here
        self.rnn_config(CellKind::Lstm, InputMode::SingleStep, 1)
            .validate()
    }
}

/// Fitted feature-extractor state, exactly one per [`FeatureKind`].
#[derive(Debug, Clone, PartialEq)]
pub enum ExtractorState {
    Stylometric {
        scaler: StandardScaler,
    },
    Tfidf {
        vectorizer: TfidfVectorizer,
    },
    Embedding {
        vocab: EmbeddingVocabulary,
        matrix: EmbeddingMatrix,
    },
}

/// Trained classifier parameters, exactly one per [`ModelKind`] family.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelParams {
    Svm(LinearSvmModel),
    Nb(NaiveBayesModel),
    Rnn {
        config: RnnConfig,
        params: RnnParams,
    },
}

/// A complete trained pipeline: everything needed to classify raw text.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedPipeline {
    pub feature: FeatureKind,
    pub model: ModelKind,
    pub preprocess: PreprocessConfig,
    pub params: HyperParams,
    pub extractor: ExtractorState,
    pub model_params: ModelParams,
    /// Sorted class names; classifier labels index into this.
    pub class_names: Vec<String>,
    /// SHA-256 over the training documents (see [`corpus_fingerprint`]).
    pub corpus_fingerprint: String,
}

/// Hex SHA-256 over the class names and the selected documents
/// (id, text, label) in index order — identifies what a model was
/// trained on without storing the corpus.
pub fn corpus_fingerprint(corpus: &Corpus, indices: &[usize]) -> String {
    let mut hasher = Sha256::new();
    for name in corpus.class_names() {
        hasher.update(name.as_bytes());
        hasher.update([0x1f]);
    }
    hasher.update([0x1e]);
    for &i in indices {
        let doc = &corpus.documents()[i];
        hasher.update(doc.id.as_bytes());
        hasher.update([0x1f]);
        hasher.update(doc.text.as_bytes());
        hasher.update([0x1f]);
        hasher.update(doc.label.to_string().as_bytes());
        hasher.update([0x1e]);
    }
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn fit_extractor(
    feature: FeatureKind,
    docs: &[&Document],
    token_seqs: &[TokenSequence],
    preprocess: &PreprocessConfig,
    params: &HyperParams,
) -> Result<ExtractorState> {
    match feature {
        FeatureKind::Stylometric => {
            let vectors: Vec<_> = docs
                .iter()
                .map(|d| extract_stylometric(d, preprocess))
                .collect();
            Ok(ExtractorState::Stylometric {
                scaler: fit_scaler(&vectors)?,
            })
        }
        FeatureKind::Tfidf => Ok(ExtractorState::Tfidf {
            vectorizer: fit_tfidf(token_seqs, &params.tfidf_config())?,
        }),
        FeatureKind::Embedding => {
            let vocab = build_embed_vocab(token_seqs, params.embed_vocab)?;
            let matrix = train_word2vec(token_seqs, &vocab, &params.word2vec_config())?;
            Ok(ExtractorState::Embedding { vocab, matrix })
        }
    }
}

impl TrainedPipeline {
    /// The dense feature vector of one raw text under this pipeline's
    /// extractor (classical models and single-timestep recurrent input).
    fn dense_features(&self, text: &str) -> Array1<f64> {
        match &self.extractor {
            ExtractorState::Stylometric { scaler } => {
                let doc = Document {
                    id: "input".into(),
                    text: text.into(),
                    label: 0,
                };
                scaler.transform(&extract_stylometric(&doc, &self.preprocess))
            }
            ExtractorState::Tfidf { vectorizer } => {
                let tokens = preprocess_text(text, &self.preprocess);
                let seq = TokenSequence {
                    tokens,
                    origin_id: "input".into(),
                };
                Array1::from(vectorizer.transform(&seq).to_dense())
            }
            ExtractorState::Embedding { vocab, matrix } => {
                let tokens = preprocess_text(text, &self.preprocess);
                mean_pool(&tokens, vocab, matrix)
            }
        }
    }

    fn rnn_input(&self, text: &str) -> RnnInput {
        match &self.extractor {
            ExtractorState::Embedding { vocab, .. } => {
                let tokens = preprocess_text(text, &self.preprocess);
                let seq = TokenSequence {
                    tokens,
                    origin_id: "input".into(),
                };
                RnnInput::Seq(encode_sequence(&seq, vocab, self.params.sequence_length))
            }
            _ => RnnInput::Dense(self.dense_features(text)),
        }
    }

    fn embedding_matrix(&self) -> Option<&EmbeddingMatrix> {
        match &self.extractor {
            ExtractorState::Embedding { matrix, .. } => Some(matrix),
            _ => None,
        }
    }

    /// Classify raw text. The score is model-specific: softmax probability
    /// of the predicted class (LSTM/GRU), posterior probability (NB), or
    /// the signed decision margin (SVM, positive means class 1).
    pub fn predict(&self, text: &str) -> (usize, f64) {
        match &self.model_params {
            ModelParams::Svm(model) => {
                let x = self.dense_features(text);
                let margin = model.margin(x.view());
                (usize::from(margin >= 0.0), margin)
            }
            ModelParams::Nb(model) => {
                let x = self.dense_features(text);
                let class = predict_nb(model, x.view());
                let [s0, s1] = nb_log_scores(model, x.view());
                let (own, other) = if class == 1 { (s1, s0) } else { (s0, s1) };
                let posterior = 1.0 / (1.0 + (other - own).exp());
                (class, posterior)
            }
            ModelParams::Rnn { config, params } => neural::predict(
                params,
                config,
                &self.rnn_input(text),
                self.embedding_matrix(),
            ),
        }
    }

    /// [`predict`](Self::predict) with the class index resolved to its name.
    pub fn predict_named(&self, text: &str) -> (&str, f64) {
        let (class, score) = self.predict(text);
        (self.class_names[class].as_str(), score)
    }
}

/// Train one (feature, model) pipeline on the selected documents.
///
/// The extractor is fitted on exactly `train_indices` — no other document
/// influences scaler statistics, idf values, vocabulary, or embeddings.
pub fn train_pipeline(
    corpus: &Corpus,
    train_indices: &[usize],
    feature: FeatureKind,
    model: ModelKind,
    preprocess: &PreprocessConfig,
    params: &HyperParams,
) -> Result<TrainedPipeline> {
    params.validate()?;
    if corpus.class_names().len() != 2 {
        return Err(Error::Pipeline(format!(
            "corpus has {} classes; exactly 2 are supported",
            corpus.class_names().len()
        )));
    }
    if train_indices.is_empty() {
        return Err(Error::EmptyFit);
    }
    if let Some(&bad) = train_indices
        .iter()
        .find(|&&i| i >= corpus.documents().len())
    {
        return Err(Error::Pipeline(format!(
            "training index {bad} is out of bounds for {} documents",
            corpus.documents().len()
        )));
    }

    let docs: Vec<&Document> = train_indices
        .iter()
        .map(|&i| &corpus.documents()[i])
        .collect();
    let labels: Vec<usize> = docs.iter().map(|d| d.label).collect();
    let token_seqs: Vec<TokenSequence> = docs
        .iter()
        .map(|d| preprocess_document(d, preprocess))
        .collect();

    let extractor = fit_extractor(feature, &docs, &token_seqs, preprocess, params)?;

    // A provisional pipeline gives prediction-identical feature extraction
    // during training; model parameters are filled in below.
    let mut pipeline = TrainedPipeline {
        feature,
        model,
        preprocess: preprocess.clone(),
        params: params.clone(),
        extractor,
        model_params: ModelParams::Svm(LinearSvmModel {
            weights: Array1::zeros(1),
            bias: 0.0,
            config: params.svm_config(),
        }),
        class_names: corpus.class_names().to_vec(),
        corpus_fingerprint: corpus_fingerprint(corpus, train_indices),
    };

    pipeline.model_params = match model {
        ModelKind::Svm | ModelKind::Nb => {
            let features: Vec<Array1<f64>> = docs
                .iter()
                .map(|d| pipeline.dense_features(&d.text))
                .collect();
            if model == ModelKind::Svm {
                ModelParams::Svm(train_svm(&features, &labels, &params.svm_config())?)
            } else {
                let variant = match feature {
                    FeatureKind::Tfidf => NbVariant::Multinomial {
                        alpha: params.nb_alpha,
                    },
                    FeatureKind::Stylometric | FeatureKind::Embedding => NbVariant::Gaussian,
                };
                ModelParams::Nb(train_nb(&features, &labels, variant)?)
            }
        }
        ModelKind::Lstm | ModelKind::Gru => {
            let cell = if model == ModelKind::Lstm {
                CellKind::Lstm
            } else {
                CellKind::Gru
            };
            let (input_mode, input_dim) = match &pipeline.extractor {
                ExtractorState::Embedding { .. } => (InputMode::Sequence, params.embed_dim),
                ExtractorState::Stylometric { .. } => {
                    (InputMode::SingleStep, crate::stylometric::STYLO_DIM)
                }
                ExtractorState::Tfidf { vectorizer } => (InputMode::SingleStep, vectorizer.dim()),
            };
            let config = params.rnn_config(cell, input_mode, input_dim);
            let samples: Vec<Sample> = docs
                .iter()
                .zip(&labels)
                .map(|(d, &y)| (pipeline.rnn_input(&d.text), y))
                .collect();
            let (trained, _history) =
                neural::train(&config, &samples, None, pipeline.embedding_matrix())?;
            ModelParams::Rnn {
                config,
                params: trained,
            }
        }
    };
    Ok(pipeline)
}
