//! Extract the 12 stylometric features from raw documents and
//! standardize them with a fitted z-score scaler.
//!
//! ```bash
//! cargo run -p ideo --example stylometric_features
//! ```

use ideo::corpus::{load_corpus, TableFormat};
use ideo::preprocess::PreprocessConfig;
use ideo::stylometric::{extract_stylometric, fit_scaler, STYLO_DIM};

const FEATURE_NAMES: [&str; STYLO_DIM] = [
    "char count",
    "token count",
    "mean token length",
    "sentence count",
    "mean sentence length",
    "exclamation marks",
    "question marks",
    "danda marks",
    "elongated tokens",
    "type-token ratio",
    "digit ratio",
    "stopword ratio",
];

fn main() -> ideo::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/sample.csv");
    let corpus = load_corpus(path, TableFormat::from_path(path))?;
    let config = PreprocessConfig::default();

    // Features are computed from the RAW text: punctuation and digits
    // carry style signal, so extraction happens before script filtering.
    let vectors: Vec<_> = corpus
        .documents()
        .iter()
        .map(|doc| extract_stylometric(doc, &config))
        .collect();

    let neutral = &vectors[0];
    let political = &vectors[8];
    println!("{:<22} {:>10} {:>10}", "feature", "neutral", "political");
    for (i, name) in FEATURE_NAMES.iter().enumerate() {
        println!(
            "{name:<22} {:>10.3} {:>10.3}",
            neutral.values[i], political.values[i]
        );
    }

    // Fit the scaler on the whole sample and standardize one vector.
    // In a real pipeline the scaler is fitted on the training split only.
    let scaler = fit_scaler(&vectors)?;
    let scaled = scaler.transform(political);
    println!("\nz-scored political vector:");
    for (name, value) in FEATURE_NAMES.iter().zip(scaled.iter()) {
        println!("  {name:<22} {value:>8.3}");
    }
    Ok(())
}
