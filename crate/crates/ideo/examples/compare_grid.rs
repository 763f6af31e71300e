//! Run the full 3×4 comparison grid — every feature extractor crossed
//! with every classifier — and render the markdown report.
//!
//! ```bash
//! cargo run -p ideo --example compare_grid
//! ```

use ideo::corpus::stratified_split;
use ideo::evaluate::run_grid;
use ideo::pipeline::HyperParams;
use ideo::preprocess::PreprocessConfig;
use ideo::report::{render_markdown_tables, ResolvedConfig};
use ideo::synthetic::{two_topic_corpus, TwoTopicSpec};

fn main() -> ideo::Result<()> {
    let corpus = two_topic_corpus(&TwoTopicSpec {
        docs_per_class: 100,
        ..Default::default()
    });
    let split = stratified_split(&corpus, 0.2, 42)?;

    // Scaled-down hyperparameters keep this demo quick; defaults mirror
    // a full experiment.
    let params = HyperParams {
        tfidf_max_features: 300,
        embed_dim: 24,
        w2v_epochs: 2,
        hidden_units: 24,
        rnn_epochs: 4,
        rnn_lr: 5e-3,
        batch_size: 16,
        sequence_length: 40,
        ..HyperParams::default()
    };

    println!("training 12 pipelines...");
    let grid = run_grid(&corpus, &split, &PreprocessConfig::default(), &params);

    let config = ResolvedConfig::from([
        (
            "corpus".to_string(),
            "synthetic two-topic, 200 documents".to_string(),
        ),
        ("seed".to_string(), params.seed.to_string()),
        ("test_fraction".to_string(), "0.2".to_string()),
    ]);
    print!("{}", render_markdown_tables(&config, &grid));
    Ok(())
}
