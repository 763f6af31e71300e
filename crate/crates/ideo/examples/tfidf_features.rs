//! Fit a TF-IDF n-gram vectorizer and inspect its vocabulary, idf
//! weights, and the sparse vector of one document.
//!
//! ```bash
//! cargo run -p ideo --example tfidf_features
//! ```

use ideo::corpus::{load_corpus, TableFormat};
use ideo::preprocess::{preprocess_document, PreprocessConfig};
use ideo::tfidf::{fit_tfidf, TfidfConfig};

fn main() -> ideo::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/sample.csv");
    let corpus = load_corpus(path, TableFormat::from_path(path))?;
    let preprocess = PreprocessConfig::default();
    let docs: Vec<_> = corpus
        .documents()
        .iter()
        .map(|d| preprocess_document(d, &preprocess))
        .collect();

    // Unigrams and bigrams, keeping the 30 most frequent.
    let config = TfidfConfig {
        max_features: 30,
        ngram_range: (1, 2),
    };
    let vectorizer = fit_tfidf(&docs, &config)?;
    println!("vocabulary ({} n-grams, lexicographic):", vectorizer.dim());
    for (ngram, idf) in vectorizer.vocabulary().iter().zip(vectorizer.idf()) {
        println!("  {ngram:<30} idf {idf:.4}");
    }

    // Transform one document into its L2-normalized sparse vector.
    let vector = vectorizer.transform(&docs[8]);
    println!("\ndocument {:?}:", docs[8].origin_id);
    println!("  text: {}", corpus.documents()[8].text);
    println!(
        "  {} of {} components are non-zero:",
        vector.indices.len(),
        vector.dim
    );
    for (&index, &weight) in vector.indices.iter().zip(&vector.values) {
        println!(
            "    [{index:>2}] {:<30} {weight:.4}",
            vectorizer.vocabulary()[index]
        );
    }
    let norm: f64 = vector.values.iter().map(|v| v * v).sum::<f64>().sqrt();
    println!("  L2 norm = {norm}");
    Ok(())
}
