//! Political-ideology classification for Bangla social-media text.
//!
//! This crate is a complete, dependency-light text-classification
//! pipeline built around one experiment: given short Bangla documents
//! labeled with one of two ideological classes, how well do three
//! feature families (stylometric measurements, TF-IDF n-grams, learned
//! word embeddings) combine with four classifiers (linear SVM, naive
//! Bayes, LSTM, GRU)? Every algorithm that carries the result — the
//! vectorizers, the skip-gram embedding trainer, the recurrent cells
//! and their backpropagation through time, the SVM and NB trainers,
//! and the evaluation metrics — is implemented here from first
//! principles and verified against independent oracles in the test
//! suite. Everything is deterministic: the same inputs and seed produce
//! bit-identical models, metrics, and report files on every run.
//!
//! # Start with the examples
//!
//! The `examples/` directory is the guided tour; each file is a small,
//! runnable program covering one capability, in reading order:
//!
//! | Example | Run with | Shows |
//! |---|---|---|
//! | `load_and_describe` | `cargo run -p ideo --example load_and_describe` | loading a labeled corpus, class balance, stratified splitting |
//! | `preprocess_text` | `cargo run -p ideo --example preprocess_text` | script filtering, tokenization, stopword removal, stage by stage |
//! | `stylometric_features` | `cargo run -p ideo --example stylometric_features` | the twelve document-statistics features and standardization |
//! | `tfidf_features` | `cargo run -p ideo --example tfidf_features` | fitting an n-gram vocabulary, inverse document frequencies, sparse vectors |
//! | `word2vec_embeddings` | `cargo run -p ideo --example word2vec_embeddings` | training skip-gram embeddings and measuring topic clustering |
//! | `classical_baselines` | `cargo run -p ideo --example classical_baselines` | SVM and naive Bayes on stylometric and TF-IDF features |
//! | `train_lstm` | `cargo run -p ideo --example train_lstm` | the full neural path: vocabulary, embeddings, sequences, LSTM training |
//! | `compare_grid` | `cargo run -p ideo --example compare_grid` | the 3 × 4 feature/model evaluation grid and its markdown report |
//! | `save_and_load` | `cargo run -p ideo --example save_and_load` | persisting a trained pipeline and reloading it bit-for-bit |
//!
//! # Module map
//!
//! Data flows left to right:
//!
//! - [`corpus`] — labeled documents, CSV/TSV loading, stratified splits.
//! - [`preprocess`] — script-range filtering, tokenization, stopwords.
//! - Feature extraction: [`stylometric`], [`tfidf`], [`embedding`].
//! - Models: [`classical`] (SVM, naive Bayes) and [`neural`] (LSTM, GRU).
//! - [`pipeline`] — ties one feature family to one model behind a
//!   single `train`/`predict` surface.
//! - [`evaluate`] — metrics and the 3 × 4 comparison grid.
//! - [`report`] — markdown tables and an SVG chart for grid results.
//! - [`persist`] — the versioned `.ideomodel` on-disk format.
//! - [`synthetic`] — a deterministic two-topic corpus generator for
//!   tests and demos.
//! - [`rng`], [`error`] — seeded randomness and the crate error type.
//!
//! # Command line
//!
//! The thin `ideo` binary exposes the same pipeline as subcommands
//! (`ingest-info`, `train`, `predict`, `evaluate`, `compare`); see
//! [`cli`] for flags, configuration files, and exit codes.

pub mod classical;
pub mod cli;
pub mod corpus;
pub mod embedding;
pub mod error;
pub mod evaluate;
pub mod neural;
pub mod persist;
pub mod pipeline;
pub mod preprocess;
pub mod report;
pub mod rng;
pub mod stylometric;
pub mod synthetic;
pub mod tfidf;

pub use error::{Error, Result};
