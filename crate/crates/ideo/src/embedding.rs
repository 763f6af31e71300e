//! Word embeddings: a frequency-ranked vocabulary, padded index sequences,
//! and skip-gram-with-negative-sampling (SGNS) training.
//!
//! Index space: 0 is PAD, 1 is OOV, vocabulary words occupy dense indices
//! from 2 in frequency-rank order. The trained matrix keeps the PAD row at
//! exactly zero; the OOV row keeps its random initialization (it is never
//! a training target), so unknown words map to a fixed arbitrary direction
//! instead of vanishing.

use std::collections::{BTreeMap, HashMap};

use ndarray::{Array1, Array2, ArrayView1};

use crate::error::{Error, Result};
use crate::preprocess::TokenSequence;
use crate::rng::SplitMix64;

/// Reserved row for sequence padding.
pub const PAD_INDEX: usize = 0;
/// Reserved row for out-of-vocabulary tokens.
pub const OOV_INDEX: usize = 1;
/// Number of reserved rows before the first word row.
pub const RESERVED_ROWS: usize = 2;

/// Top-K words by corpus frequency, ties broken lexicographically.
/// `words[i]` owns embedding row `i + RESERVED_ROWS`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingVocabulary {
    words: Vec<String>,
    counts: Vec<u64>,
    index: HashMap<String, usize>,
}

impl EmbeddingVocabulary {
    /// Number of vocabulary words (excluding PAD/OOV).
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Total embedding rows: words plus the two reserved slots.
    pub fn n_rows(&self) -> usize {
        self.words.len() + RESERVED_ROWS
    }

    /// Embedding row for a token; unknown tokens map to [`OOV_INDEX`].
    pub fn lookup(&self, token: &str) -> usize {
        self.index.get(token).copied().unwrap_or(OOV_INDEX)
    }

    /// Row index of a known word, or `None` when out of vocabulary.
    pub fn word_index(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    /// Words in index order (row `RESERVED_ROWS + i`).
    pub fn words(&self) -> &[String] {
        &self.words
    }

    /// Corpus frequencies aligned with [`words`](Self::words).
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Reassemble from stored state (used when loading a saved model).
    pub fn from_parts(words: Vec<String>, counts: Vec<u64>) -> Result<Self> {
        if words.len() != counts.len() {
            return Err(Error::InvalidModel(format!(
                "vocabulary has {} words but {} counts",
                words.len(),
                counts.len()
            )));
        }
        let mut index = HashMap::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            if index.insert(w.clone(), i + RESERVED_ROWS).is_some() {
                return Err(Error::InvalidModel(format!(
                    "duplicate vocabulary word {w:?}"
                )));
            }
        }
        Ok(EmbeddingVocabulary {
            words,
            counts,
            index,
        })
    }
}

/// Rank words by total corpus count (descending, ties lexicographically
/// ascending) and keep the top `k`.
pub fn build_embed_vocab(docs: &[TokenSequence], k: usize) -> Result<EmbeddingVocabulary> {
    if k == 0 {
        return Err(Error::InvalidConfig(
            "vocabulary size must be positive".into(),
        ));
    }
    if docs.is_empty() {
        return Err(Error::EmptyFit);
    }
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for doc in docs {
        for token in &doc.tokens {
            *counts.entry(token.clone()).or_insert(0) += 1;
        }
    }
    if counts.is_empty() {
        return Err(Error::AllDocumentsEmpty);
    }
    // BTreeMap iterates lexicographically; a stable sort by count
    // descending therefore leaves ties in ascending word order.
    let mut ranked: Vec<(String, u64)> = counts.into_iter().collect();
    ranked.sort_by_key(|&(_, count)| std::cmp::Reverse(count));
    ranked.truncate(k);
    let (words, counts): (Vec<String>, Vec<u64>) = ranked.into_iter().unzip();
    EmbeddingVocabulary::from_parts(words, counts)
}

/// A document as exactly `L` embedding-row ids: the first
/// `true_length` slots hold token ids (OOV for unknown words), the rest
/// are PAD zeros. Inputs longer than `L` are truncated.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct IndexSequence {
    pub ids: Vec<usize>,
    pub true_length: usize,
}

/// Map tokens to embedding rows, truncating or zero-padding to length `l`.
pub fn encode_sequence(
    seq: &TokenSequence,
    vocab: &EmbeddingVocabulary,
    l: usize,
) -> IndexSequence {
    let true_length = seq.tokens.len().min(l);
    let mut ids = vec![PAD_INDEX; l];
    for (slot, token) in ids.iter_mut().zip(seq.tokens.iter()) {
        *slot = vocab.lookup(token);
    }
    IndexSequence { ids, true_length }
}

/// Dense `(n_rows × dim)` embedding table. Row 0 (PAD) is exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix {
    rows: Array2<f64>,
}

impl EmbeddingMatrix {
    pub fn dim(&self) -> usize {
        self.rows.ncols()
    }

    pub fn n_rows(&self) -> usize {
        self.rows.nrows()
    }

    pub fn row(&self, i: usize) -> ArrayView1<'_, f64> {
        self.rows.row(i)
    }

    pub fn rows(&self) -> &Array2<f64> {
        &self.rows
    }

    /// Wrap a raw table, enforcing the finite-entries and zero-PAD-row
    /// invariants (used when loading a saved model).
    pub fn from_rows(rows: Array2<f64>) -> Result<Self> {
        if rows.nrows() < RESERVED_ROWS || rows.ncols() == 0 {
            return Err(Error::InvalidModel(format!(
                "embedding table {}×{} is too small",
                rows.nrows(),
                rows.ncols()
            )));
        }
        if rows.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidModel(
                "embedding table has non-finite entries".into(),
            ));
        }
        if rows.row(PAD_INDEX).iter().any(|&x| x != 0.0) {
            return Err(Error::InvalidModel("embedding PAD row must be zero".into()));
        }
        Ok(EmbeddingMatrix { rows })
    }
}

/// Average of the in-vocabulary word vectors of `tokens`; the zero vector
/// when none are in vocabulary. This is how sequence embeddings are
/// flattened for models that consume a single dense vector.
pub fn mean_pool(
    tokens: &[String],
    vocab: &EmbeddingVocabulary,
    matrix: &EmbeddingMatrix,
) -> Array1<f64> {
    let mut sum = Array1::zeros(matrix.dim());
    let mut n = 0usize;
    for token in tokens {
        if let Some(row) = vocab.word_index(token) {
            sum += &matrix.row(row);
            n += 1;
        }
    }
    if n > 0 {
        sum /= n as f64;
    }
    sum
}

/// `a·b / (‖a‖‖b‖)`, clamped into [−1, 1] against rounding.
pub fn cosine_similarity(a: ArrayView1<'_, f64>, b: ArrayView1<'_, f64>) -> Result<f64> {
    let na = a.dot(&a).sqrt();
    let nb = b.dot(&b).sqrt();
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok((a.dot(&b) / (na * nb)).clamp(-1.0, 1.0))
}

/// SGNS training hyperparameters.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Word2vecConfig {
    /// Embedding dimensionality.
    pub dim: usize,
    /// Symmetric context window radius.
    pub window: usize,
    /// Negative samples per (center, context) pair.
    pub negatives: usize,
    pub epochs: usize,
    /// Initial learning rate; decays linearly to `lr0 / 100` over training.
    pub lr0: f64,
    pub seed: u64,
}

impl Default for Word2vecConfig {
    fn default() -> Self {
        Word2vecConfig {
            dim: 100,
            window: 5,
            negatives: 5,
            epochs: 5,
            lr0: 0.025,
            seed: 42,
        }
    }
}

impl Word2vecConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidConfig(
                "embedding dim must be positive".into(),
            ));
        }
        if self.window == 0 {
            return Err(Error::InvalidConfig("window must be positive".into()));
        }
        if !(self.lr0 > 0.0 && self.lr0.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "lr0 {} must be positive",
                self.lr0
            )));
        }
        Ok(())
    }
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Numerically stable `ln σ(x)`.
fn log_sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        -(-x).exp().ln_1p()
    } else {
        x - x.exp().ln_1p()
    }
}

/// Local SGNS objective for one (center, context, negatives) triple:
/// `ln σ(u_pos·v) + Σ_k ln σ(−u_negs[k]·v)`. Training ascends this.
pub fn sgns_pair_objective(v: &Array1<f64>, u_pos: &Array1<f64>, u_negs: &Array2<f64>) -> f64 {
    let mut obj = log_sigmoid(u_pos.dot(v));
    for u_neg in u_negs.rows() {
        obj += log_sigmoid(-u_neg.dot(v));
    }
    obj
}

/// Analytic gradients of [`sgns_pair_objective`] with respect to `v`,
/// `u_pos`, and each negative row, all evaluated at the given point.
pub fn sgns_pair_gradients(
    v: &Array1<f64>,
    u_pos: &Array1<f64>,
    u_negs: &Array2<f64>,
) -> (Array1<f64>, Array1<f64>, Array2<f64>) {
    let g_pos = 1.0 - sigmoid(u_pos.dot(v));
    let mut dv = g_pos * u_pos;
    let du_pos = g_pos * v;
    let mut du_negs = Array2::zeros(u_negs.raw_dim());
    for (k, u_neg) in u_negs.rows().into_iter().enumerate() {
        let g_neg = -sigmoid(u_neg.dot(v));
        dv.scaled_add(g_neg, &u_neg);
        du_negs.row_mut(k).assign(&(g_neg * v));
    }
    (dv, du_pos, du_negs)
}

/// Cumulative-weight sampler over vocabulary rows, weighting each word by
/// `count^0.75` (the standard negative-sampling distribution). PAD and OOV
/// are never drawn.
struct NegativeSampler {
    cumulative: Vec<f64>,
    total: f64,
}

impl NegativeSampler {
    fn new(vocab: &EmbeddingVocabulary) -> Self {
        let mut cumulative = Vec::with_capacity(vocab.len());
        let mut total = 0.0;
        for &count in vocab.counts() {
            total += (count as f64).powf(0.75);
            cumulative.push(total);
        }
        NegativeSampler { cumulative, total }
    }

    /// Draw one embedding row (≥ RESERVED_ROWS).
    fn draw(&self, rng: &mut SplitMix64) -> usize {
        let r = rng.next_f64() * self.total;
        let i = self.cumulative.partition_point(|&c| c <= r);
        i.min(self.cumulative.len() - 1) + RESERVED_ROWS
    }
}

/// Train skip-gram-with-negative-sampling input vectors.
///
/// Determinism contract (frozen so fixed seeds reproduce bit-identical
/// matrices): input vectors for rows 1.. are drawn row-major as
/// `uniform(−0.5/dim, 0.5/dim)` from one seeded PRNG stream (the PAD row
/// is never drawn and stays zero); output vectors start at zero; documents
/// are visited in corpus order each epoch with out-of-vocabulary tokens
/// dropped before windowing; negatives are drawn from the same stream, one
/// batch per (center, context) pair in window order. The learning rate
/// interpolates linearly from `lr0` at the first (epoch, position) step to
/// `lr0 / 100` at the last. All gradient contributions of a pair are
/// computed from pre-update parameters, then applied in one step.
pub fn train_word2vec(
    docs: &[TokenSequence],
    vocab: &EmbeddingVocabulary,
    config: &Word2vecConfig,
) -> Result<EmbeddingMatrix> {
    config.validate()?;
    if vocab.is_empty() {
        return Err(Error::EmptyFit);
    }

    let d = config.dim;
    let n_rows = vocab.n_rows();
    let mut rng = SplitMix64::new(config.seed);

    let mut v = Array2::zeros((n_rows, d));
    let span = 0.5 / d as f64;
    for row in 1..n_rows {
        for col in 0..d {
            v[[row, col]] = rng.uniform(-span, span);
        }
    }
    let mut u = Array2::zeros((n_rows, d));

    // Row ids per document, unknown words dropped.
    let encoded: Vec<Vec<usize>> = docs
        .iter()
        .map(|doc| {
            doc.tokens
                .iter()
                .filter_map(|t| vocab.word_index(t))
                .collect()
        })
        .collect();

    let positions: usize = encoded.iter().map(Vec::len).sum();
    let total_steps = config.epochs * positions;
    let lr_end = config.lr0 / 100.0;
    let lr_at = |t: usize| -> f64 {
        if total_steps <= 1 {
            config.lr0
        } else {
            let frac = t as f64 / (total_steps - 1) as f64;
            config.lr0 + (lr_end - config.lr0) * frac
        }
    };

    let sampler = NegativeSampler::new(vocab);
    let mut negs = vec![0usize; config.negatives];
    let mut step = 0usize;
    for _ in 0..config.epochs {
        for doc in &encoded {
            for (i, &center) in doc.iter().enumerate() {
                let lr = lr_at(step);
                let lo = i.saturating_sub(config.window);
                let hi = (i + config.window).min(doc.len() - 1);
                for (j, &context) in doc.iter().enumerate().take(hi + 1).skip(lo) {
                    if j == i {
                        continue;
                    }
                    for n in &mut negs {
                        *n = sampler.draw(&mut rng);
                    }
                    let vc = v.row(center).to_owned();
                    let u_pos = u.row(context).to_owned();
                    let mut u_negs = Array2::zeros((config.negatives, d));
                    for (k, &n) in negs.iter().enumerate() {
                        u_negs.row_mut(k).assign(&u.row(n));
                    }
                    let (dv, du_pos, du_negs) = sgns_pair_gradients(&vc, &u_pos, &u_negs);
                    u.row_mut(context).scaled_add(lr, &du_pos);
                    for (k, &n) in negs.iter().enumerate() {
                        u.row_mut(n).scaled_add(lr, &du_negs.row(k));
                    }
                    v.row_mut(center).scaled_add(lr, &dv);
                }
                step += 1;
            }
        }
    }

    v.row_mut(PAD_INDEX).fill(0.0);
    EmbeddingMatrix::from_rows(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(tokens: &[&str]) -> TokenSequence {
        TokenSequence {
            tokens: tokens.iter().map(|t| t.to_string()).collect(),
            origin_id: "t".into(),
        }
    }

    #[test]
    fn vocab_ranks_by_frequency() {
        // counts: ক=5, খ=2
        let docs = [seq(&["ক", "ক", "ক", "খ", "ক", "ক", "খ"])];
        let vocab = build_embed_vocab(&docs, 1).unwrap();
        assert_eq!(vocab.words(), ["ক"]);
        assert_eq!(vocab.lookup("ক"), 2);
        assert_eq!(vocab.lookup("খ"), OOV_INDEX);
        assert_eq!(vocab.n_rows(), 3);
    }

    #[test]
    fn vocab_keeps_all_when_k_is_large() {
        let docs = [seq(&["ক", "খ"])];
        let vocab = build_embed_vocab(&docs, 100).unwrap();
        assert_eq!(vocab.len(), 2);
    }

    #[test]
    fn vocab_tie_breaks_lexicographically() {
        let docs = [seq(&["খ", "ক", "খ", "ক", "খ", "ক"])];
        let vocab = build_embed_vocab(&docs, 1).unwrap();
        assert_eq!(vocab.words(), ["ক"]);
    }

    #[test]
    fn vocab_index_order_is_rank_order() {
        // গ most frequent → row 2, then ক (tie with খ, lexicographic) → 3
        let docs = [seq(&["গ", "গ", "গ", "ক", "খ"])];
        let vocab = build_embed_vocab(&docs, 10).unwrap();
        assert_eq!(vocab.words(), ["গ", "ক", "খ"]);
        assert_eq!(vocab.lookup("গ"), 2);
        assert_eq!(vocab.lookup("ক"), 3);
        assert_eq!(vocab.counts(), [3, 1, 1]);
    }

    #[test]
    fn vocab_errors() {
        assert!(matches!(build_embed_vocab(&[], 5), Err(Error::EmptyFit)));
        assert!(matches!(
            build_embed_vocab(&[seq(&[])], 5),
            Err(Error::AllDocumentsEmpty)
        ));
        assert!(build_embed_vocab(&[seq(&["ক"])], 0).is_err());
    }

    #[test]
    fn encode_empty_is_all_pad() {
        let vocab = build_embed_vocab(&[seq(&["ক"])], 10).unwrap();
        let enc = encode_sequence(&seq(&[]), &vocab, 100);
        assert_eq!(enc.ids, vec![0; 100]);
        assert_eq!(enc.true_length, 0);
    }

    #[test]
    fn encode_truncates_long_input() {
        let vocab = build_embed_vocab(&[seq(&["ক"])], 10).unwrap();
        let tokens: Vec<String> = (0..150).map(|_| "ক".to_string()).collect();
        let long = TokenSequence {
            tokens,
            origin_id: "t".into(),
        };
        let enc = encode_sequence(&long, &vocab, 100);
        assert_eq!(enc.ids.len(), 100);
        assert_eq!(enc.true_length, 100);
        assert!(enc.ids.iter().all(|&i| i == 2));
    }

    #[test]
    fn encode_single_token_left_aligned() {
        let vocab = build_embed_vocab(&[seq(&["ক"])], 10).unwrap();
        let enc = encode_sequence(&seq(&["ক"]), &vocab, 100);
        assert_eq!(enc.ids[0], 2);
        assert!(enc.ids[1..].iter().all(|&i| i == 0));
        assert_eq!(enc.true_length, 1);
    }

    #[test]
    fn encode_maps_unknown_to_oov_and_stays_in_range() {
        let vocab = build_embed_vocab(&[seq(&["ক", "খ", "গ"])], 2).unwrap();
        let enc = encode_sequence(&seq(&["ক", "ঘ", "খ", "গ"]), &vocab, 6);
        assert!(enc.ids.iter().all(|&i| i < vocab.n_rows()));
        assert_eq!(enc.ids[1], OOV_INDEX);
        assert_eq!(enc.ids[enc.true_length..], [0, 0]);
    }

    fn tiny_config(epochs: usize) -> Word2vecConfig {
        Word2vecConfig {
            dim: 8,
            window: 2,
            negatives: 3,
            epochs,
            lr0: 0.025,
            seed: 7,
        }
    }

    #[test]
    fn zero_epochs_returns_initialization() {
        let docs = [seq(&["ক", "খ", "গ"])];
        let vocab = build_embed_vocab(&docs, 10).unwrap();
        let m = train_word2vec(&docs, &vocab, &tiny_config(0)).unwrap();
        // PAD row zero, all other rows inside the init range.
        assert!(m.row(0).iter().all(|&x| x == 0.0));
        let span = 0.5 / 8.0;
        for row in 1..m.n_rows() {
            for &x in m.row(row) {
                assert!(x > -span && x < span, "init value {x} outside ±{span}");
            }
        }
        // OOV row is nonzero (drawn, never trained).
        assert!(m.row(OOV_INDEX).iter().any(|&x| x != 0.0));
    }

    #[test]
    fn pad_row_stays_zero_after_training() {
        let docs = [seq(&["ক", "খ", "গ", "ক", "খ"]), seq(&["গ", "ক"])];
        let vocab = build_embed_vocab(&docs, 10).unwrap();
        let m = train_word2vec(&docs, &vocab, &tiny_config(3)).unwrap();
        assert!(m.row(PAD_INDEX).iter().all(|&x| x == 0.0));
        assert!(m.rows().iter().all(|x| x.is_finite()));
    }

    #[test]
    fn training_is_deterministic() {
        let docs = [seq(&["ক", "খ", "গ", "ক"]), seq(&["খ", "গ"])];
        let vocab = build_embed_vocab(&docs, 10).unwrap();
        let a = train_word2vec(&docs, &vocab, &tiny_config(2)).unwrap();
        let b = train_word2vec(&docs, &vocab, &tiny_config(2)).unwrap();
        assert_eq!(a.rows(), b.rows());
        let other = Word2vecConfig {
            seed: 8,
            ..tiny_config(2)
        };
        let c = train_word2vec(&docs, &vocab, &other).unwrap();
        assert_ne!(a.rows(), c.rows());
    }

    #[test]
    fn empty_vocab_is_an_error() {
        let vocab = EmbeddingVocabulary::from_parts(vec![], vec![]).unwrap();
        assert!(matches!(
            train_word2vec(&[seq(&["ক"])], &vocab, &tiny_config(1)),
            Err(Error::EmptyFit)
        ));
    }

    #[test]
    fn pair_gradients_match_finite_differences() {
        let mut rng = SplitMix64::new(11);
        let d = 6;
        let v = Array1::from_iter((0..d).map(|_| rng.uniform(-0.8, 0.8)));
        let u_pos = Array1::from_iter((0..d).map(|_| rng.uniform(-0.8, 0.8)));
        let u_negs = Array2::from_shape_fn((3, d), |_| rng.uniform(-0.8, 0.8));
        let (dv, du_pos, du_negs) = sgns_pair_gradients(&v, &u_pos, &u_negs);

        let h = 1e-5;
        let check = |analytic: f64, plus: f64, minus: f64| {
            let numeric = (plus - minus) / (2.0 * h);
            let denom = analytic.abs().max(numeric.abs()).max(1e-8);
            assert!(
                ((analytic - numeric) / denom).abs() < 1e-4,
                "analytic {analytic} vs numeric {numeric}"
            );
        };
        for i in 0..d {
            let mut vp = v.clone();
            let mut vm = v.clone();
            vp[i] += h;
            vm[i] -= h;
            check(
                dv[i],
                sgns_pair_objective(&vp, &u_pos, &u_negs),
                sgns_pair_objective(&vm, &u_pos, &u_negs),
            );
            let mut up = u_pos.clone();
            let mut um = u_pos.clone();
            up[i] += h;
            um[i] -= h;
            check(
                du_pos[i],
                sgns_pair_objective(&v, &up, &u_negs),
                sgns_pair_objective(&v, &um, &u_negs),
            );
            for k in 0..3 {
                let mut np = u_negs.clone();
                let mut nm = u_negs.clone();
                np[[k, i]] += h;
                nm[[k, i]] -= h;
                check(
                    du_negs[[k, i]],
                    sgns_pair_objective(&v, &u_pos, &np),
                    sgns_pair_objective(&v, &u_pos, &nm),
                );
            }
        }
    }

    #[test]
    fn cosine_similarity_basics() {
        let x = Array1::from(vec![1.0, 2.0, -3.0]);
        let neg = -&x;
        assert_eq!(cosine_similarity(x.view(), x.view()).unwrap(), 1.0);
        assert_eq!(cosine_similarity(x.view(), neg.view()).unwrap(), -1.0);
        let e1 = Array1::from(vec![1.0, 0.0]);
        let e2 = Array1::from(vec![0.0, 1.0]);
        assert_eq!(cosine_similarity(e1.view(), e2.view()).unwrap(), 0.0);
        let zero = Array1::from(vec![0.0, 0.0]);
        assert!(matches!(
            cosine_similarity(e1.view(), zero.view()),
            Err(Error::ZeroNorm)
        ));
    }

    #[test]
    fn mean_pool_averages_known_words_only() {
        let docs = [seq(&["ক", "খ"])];
        let vocab = build_embed_vocab(&docs, 10).unwrap();
        let m = train_word2vec(&docs, &vocab, &tiny_config(1)).unwrap();
        let tokens: Vec<String> = ["ক", "ঘ", "খ"].iter().map(|s| s.to_string()).collect();
        let pooled = mean_pool(&tokens, &vocab, &m);
        let expected = (&m.row(vocab.lookup("ক")) + &m.row(vocab.lookup("খ"))) / 2.0;
        assert_eq!(pooled, expected);
        let none: Vec<String> = vec!["ঘ".to_string()];
        assert!(mean_pool(&none, &vocab, &m).iter().all(|&x| x == 0.0));
    }

    #[test]
    fn topic_clusters_separate() {
        // Two disjoint-vocabulary topics: words that co-occur end up closer
        // (higher cosine) to each other than to the other topic's words.
        let spec = crate::synthetic::TwoTopicSpec::default();
        let corpus = crate::synthetic::two_topic_corpus(&spec);
        let config = crate::preprocess::PreprocessConfig::default();
        let docs: Vec<TokenSequence> = corpus
            .documents()
            .iter()
            .map(|d| crate::preprocess::preprocess_document(d, &config))
            .collect();
        let vocab = build_embed_vocab(&docs, 1000).unwrap();
        let w2v = Word2vecConfig {
            dim: 16,
            window: 3,
            negatives: 4,
            epochs: 2,
            lr0: 0.025,
            seed: 5,
        };
        let m = train_word2vec(&docs, &vocab, &w2v).unwrap();

        let (topic_a, topic_b) = crate::synthetic::topic_vocabularies(&spec);
        let rows = |words: &[String]| -> Vec<usize> {
            words.iter().filter_map(|w| vocab.word_index(w)).collect()
        };
        let a_rows = rows(&topic_a);
        let b_rows = rows(&topic_b);
        assert!(a_rows.len() > 10 && b_rows.len() > 10);

        let mean_cos = |xs: &[usize], ys: &[usize], skip_same: bool| -> f64 {
            let mut total = 0.0;
            let mut n = 0usize;
            for &x in xs {
                for &y in ys {
                    if skip_same && x == y {
                        continue;
                    }
                    total += cosine_similarity(m.row(x), m.row(y)).unwrap();
                    n += 1;
                }
            }
            total / n as f64
        };
        let intra = (mean_cos(&a_rows, &a_rows, true) + mean_cos(&b_rows, &b_rows, true)) / 2.0;
        let inter = mean_cos(&a_rows, &b_rows, false);
        assert!(
            intra > inter,
            "intra-topic cosine {intra} should exceed inter-topic {inter}"
        );
    }
}
