//! Train skip-gram-with-negative-sampling embeddings on a synthetic
//! two-topic corpus and verify that words cluster by topic.
//!
//! ```bash
//! cargo run -p ideo --example word2vec_embeddings
//! ```

use ideo::embedding::{build_embed_vocab, cosine_similarity, train_word2vec, Word2vecConfig};
use ideo::preprocess::{preprocess_document, PreprocessConfig};
use ideo::synthetic::{topic_vocabularies, two_topic_corpus, TwoTopicSpec};

fn main() -> ideo::Result<()> {
    // 200 documents, two disjoint 50-word vocabularies in the Bangla block.
    let spec = TwoTopicSpec {
        docs_per_class: 100,
        ..TwoTopicSpec::default()
    };
    let corpus = two_topic_corpus(&spec);
    let preprocess = PreprocessConfig::default();
    let docs: Vec<_> = corpus
        .documents()
        .iter()
        .map(|d| preprocess_document(d, &preprocess))
        .collect();

    let vocab = build_embed_vocab(&docs, 500)?;
    println!(
        "vocabulary: {} words (+2 reserved rows for PAD and OOV)",
        vocab.len()
    );

    let config = Word2vecConfig {
        dim: 24,
        window: 4,
        negatives: 5,
        epochs: 3,
        ..Default::default()
    };
    println!(
        "training SGNS: dim {}, {} epochs...",
        config.dim, config.epochs
    );
    let matrix = train_word2vec(&docs, &vocab, &config)?;

    // Words from the same topic should be closer than words from
    // different topics.
    let (neutral_words, political_words) = topic_vocabularies(&spec);
    let pick = |words: &[String]| -> Vec<String> {
        words
            .iter()
            .filter(|w| vocab.word_index(w).is_some())
            .take(5)
            .cloned()
            .collect()
    };
    let neutral = pick(&neutral_words);
    let political = pick(&political_words);

    let mean_cosine = |a: &[String], b: &[String]| -> f64 {
        let mut total = 0.0;
        let mut n = 0;
        for x in a {
            for y in b {
                if x == y {
                    continue;
                }
                let xi = vocab.word_index(x).unwrap();
                let yi = vocab.word_index(y).unwrap();
                total += cosine_similarity(matrix.row(xi), matrix.row(yi)).unwrap();
                n += 1;
            }
        }
        total / f64::from(n)
    };

    let intra = (mean_cosine(&neutral, &neutral) + mean_cosine(&political, &political)) / 2.0;
    let inter = mean_cosine(&neutral, &political);
    println!("mean intra-topic cosine: {intra:.4}");
    println!("mean inter-topic cosine: {inter:.4}");
    println!("separation gap: {:.4}", intra - inter);
    Ok(())
}
