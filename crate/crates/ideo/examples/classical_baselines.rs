//! Train the two classical baselines — linear SVM (Pegasos) and naive
//! Bayes — through the pipeline API and score them on held-out data.
//!
//! ```bash
//! cargo run -p ideo --example classical_baselines
//! ```

use ideo::corpus::stratified_split;
use ideo::evaluate::score;
use ideo::pipeline::{train_pipeline, FeatureKind, HyperParams, ModelKind};
use ideo::preprocess::PreprocessConfig;
use ideo::synthetic::{two_topic_corpus, TwoTopicSpec};

fn main() -> ideo::Result<()> {
    let corpus = two_topic_corpus(&TwoTopicSpec::default());
    let split = stratified_split(&corpus, 0.2, 42)?;
    let preprocess = PreprocessConfig::default();
    let params = HyperParams {
        tfidf_max_features: 300,
        ..HyperParams::default()
    };

    for feature in [FeatureKind::Stylometric, FeatureKind::Tfidf] {
        for model in [ModelKind::Svm, ModelKind::Nb] {
            let pipeline = train_pipeline(
                &corpus,
                &split.train_indices,
                feature,
                model,
                &preprocess,
                &params,
            )?;

            let mut y_true = Vec::new();
            let mut y_pred = Vec::new();
            for &i in &split.test_indices {
                let doc = &corpus.documents()[i];
                y_true.push(doc.label);
                y_pred.push(pipeline.predict(&doc.text).0);
            }
            let metrics = score(&y_true, &y_pred)?;
            println!(
                "{feature:>12}+{model:<4} accuracy {:.4}  macro-F1 {:.4}  confusion {:?}",
                metrics.accuracy, metrics.macro_f1, metrics.confusion.counts
            );
        }
    }

    // Class names come from the corpus, scores from the model: the SVM
    // reports a signed margin, naive Bayes a posterior probability.
    let pipeline = train_pipeline(
        &corpus,
        &split.train_indices,
        FeatureKind::Tfidf,
        ModelKind::Nb,
        &preprocess,
        &params,
    )?;
    let text = &corpus.documents()[split.test_indices[0]].text;
    let (name, posterior) = pipeline.predict_named(text);
    println!("\nsample prediction: {name} (posterior {posterior:.4})");
    Ok(())
}
