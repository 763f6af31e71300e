//! Train the strongest configuration from the original study — word
//! embeddings feeding an LSTM — and watch the per-epoch loss fall.
//!
//! ```bash
//! cargo run -p ideo --example train_lstm
//! ```

use ideo::corpus::stratified_split;
use ideo::embedding::{build_embed_vocab, encode_sequence, train_word2vec, Word2vecConfig};
use ideo::neural::{train, CellKind, InputMode, RnnConfig, RnnInput, Sample};
use ideo::preprocess::{preprocess_document, PreprocessConfig};
use ideo::synthetic::{two_topic_corpus, TwoTopicSpec};

fn main() -> ideo::Result<()> {
    let corpus = two_topic_corpus(&TwoTopicSpec {
        docs_per_class: 100,
        ..Default::default()
    });
    let split = stratified_split(&corpus, 0.2, 42)?;
    let preprocess = PreprocessConfig::default();

    // Embeddings are fitted on the training split only.
    let train_docs: Vec<_> = split
        .train_indices
        .iter()
        .map(|&i| preprocess_document(&corpus.documents()[i], &preprocess))
        .collect();
    let vocab = build_embed_vocab(&train_docs, 500)?;
    let w2v = Word2vecConfig {
        dim: 24,
        epochs: 2,
        ..Default::default()
    };
    let embedding = train_word2vec(&train_docs, &vocab, &w2v)?;

    // Encode every document as a fixed-length index sequence.
    let sequence_length = 40;
    let encode = |index: usize| -> Sample {
        let doc = &corpus.documents()[index];
        let seq = preprocess_document(doc, &preprocess);
        (
            RnnInput::Seq(encode_sequence(&seq, &vocab, sequence_length)),
            doc.label,
        )
    };
    let train_set: Vec<Sample> = split.train_indices.iter().map(|&i| encode(i)).collect();
    let test_set: Vec<Sample> = split.test_indices.iter().map(|&i| encode(i)).collect();

    let config = RnnConfig {
        hidden_units: 24,
        epochs: 5,
        batch_size: 16,
        lr: 5e-3,
        ..RnnConfig::defaults(CellKind::Lstm, InputMode::Sequence, w2v.dim, 5)
    };
    println!(
        "training LSTM: {} hidden units, {} epochs, batch {}",
        config.hidden_units, config.epochs, config.batch_size
    );
    let (params, history) = train(&config, &train_set, Some(&test_set), Some(&embedding))?;
    for epoch in &history {
        println!(
            "  epoch {:>2}  train loss {:.4}  test loss {:.4}",
            epoch.epoch,
            epoch.train_loss,
            epoch.valid_loss.unwrap()
        );
    }

    let correct = test_set
        .iter()
        .filter(|(input, label)| {
            ideo::neural::predict(&params, &config, input, Some(&embedding)).0 == *label
        })
        .count();
    println!(
        "test accuracy: {:.4}",
        correct as f64 / test_set.len() as f64
    );
    Ok(())
}
