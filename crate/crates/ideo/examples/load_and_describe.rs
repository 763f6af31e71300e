//! Load a labeled CSV corpus, describe it, and make a stratified split.
//!
//! ```bash
//! cargo run -p ideo --example load_and_describe
//! ```

use ideo::corpus::{class_distribution, load_corpus, stratified_split, TableFormat};

fn main() -> ideo::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/sample.csv");
    let corpus = load_corpus(path, TableFormat::from_path(path))?;

    println!(
        "loaded {} documents from {}",
        corpus.len(),
        corpus.source_path()
    );
    println!("classes: {:?}", corpus.class_names());
    for (name, count) in class_distribution(&corpus) {
        println!("  {name:<10} {count:>4}");
    }

    let first = &corpus.documents()[0];
    println!("\nfirst document ({}, label {}):", first.id, first.label);
    println!("  {}", first.text);

    // Hold out 25% for testing, preserving the class balance.
    let split = stratified_split(&corpus, 0.25, 42)?;
    println!(
        "\nstratified split (seed {}): {} train / {} test",
        split.seed,
        split.train_indices.len(),
        split.test_indices.len()
    );
    println!("test indices: {:?}", split.test_indices);
    Ok(())
}
