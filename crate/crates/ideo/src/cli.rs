//! Command-line interface: `ingest-info`, `train`, `predict`,
//! `evaluate`, and `compare` subcommands wiring the full pipeline.
//!
//! Settings merge in fixed precedence: built-in defaults, then a
//! `--config` file of flat `key=value` lines (UTF-8, `#` comment
//! lines), then command-line flags. The fully resolved configuration
//! is echoed into every artifact, and no artifact contains timestamps
//! or hostnames — identical inputs produce byte-identical outputs.
//!
//! Exit codes: 0 success, 1 pipeline error (I/O, training, scoring),
//! 2 usage error (bad flags, bad config file).

use std::ffi::OsString;
use std::io::BufRead;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::corpus::{class_distribution, load_corpus, stratified_split, Corpus, TableFormat};
use crate::error::{Error, Result};
use crate::evaluate::{run_grid, score, MetricsReport};
use crate::persist;
use crate::pipeline::{train_pipeline, FeatureKind, HyperParams, ModelKind, TrainedPipeline};
use crate::preprocess::{load_stopwords, preprocess_document, PreprocessConfig, BANGLA_BLOCK};
use crate::report::{
    render_grid_json, render_markdown_tables, render_single_json, render_svg_chart, ResolvedConfig,
};

#[derive(Parser)]
#[command(
    name = "ideo",
    version,
    about = "Train and compare political-text classifiers for Bangla"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a labeled dataset: size, classes, token statistics
    IngestInfo(IngestInfoArgs),
    /// Train one feature+model pipeline; write model and metrics files
    Train(TrainArgs),
    /// Classify text lines with a saved model (class TAB score per line)
    Predict(PredictArgs),
    /// Score a saved model against a labeled dataset
    Evaluate(EvaluateArgs),
    /// Train and score every feature×model combination
    Compare(CompareArgs),
}

/// Flags shared by the corpus-consuming subcommands.
#[derive(Args, Debug, Default)]
struct CommonOpts {
    /// Labeled dataset: CSV/TSV with `text` and `label` columns
    #[arg(long)]
    data: Option<PathBuf>,
    /// Flat key=value settings file; flags given here override it
    #[arg(long)]
    config: Option<PathBuf>,
    /// Stopword list: one token per line, '#' comment lines
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// Retained codepoint range as HEXLO-HEXHI, e.g. 0980-09FF (repeatable)
    #[arg(long = "script-range", value_name = "HEXLO-HEXHI")]
    script_range: Vec<String>,
    /// Directory for output artifacts (created if missing)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Master RNG seed for splitting and training
    #[arg(long)]
    seed: Option<u64>,
    /// Fraction of documents held out for testing, in (0, 1)
    #[arg(long, allow_negative_numbers = true)]
    test_fraction: Option<f64>,
}

/// Per-hyperparameter override flags (all optional; defaults documented
/// on [`HyperParams`]).
#[derive(Args, Debug, Default)]
struct HyperOpts {
    #[arg(long)]
    tfidf_max_features: Option<usize>,
    #[arg(long)]
    ngram_lo: Option<usize>,
    #[arg(long)]
    ngram_hi: Option<usize>,
    #[arg(long)]
    embed_vocab: Option<usize>,
    #[arg(long)]
    embed_dim: Option<usize>,
    #[arg(long)]
    sequence_length: Option<usize>,
    #[arg(long)]
    w2v_window: Option<usize>,
    #[arg(long)]
    w2v_negatives: Option<usize>,
    #[arg(long)]
    w2v_epochs: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    w2v_lr0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    svm_lambda: Option<f64>,
    #[arg(long)]
    svm_epochs: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    nb_alpha: Option<f64>,
    #[arg(long)]
    hidden_units: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    rnn_lr: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    rnn_rho: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    rnn_epsilon: Option<f64>,
    #[arg(long)]
    batch_size: Option<usize>,
    #[arg(long)]
    rnn_epochs: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    clip_norm: Option<f64>,
}

#[derive(Args, Debug)]
struct IngestInfoArgs {
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args, Debug)]
struct TrainArgs {
    #[command(flatten)]
    common: CommonOpts,
    /// Feature extractor: stylometric, tfidf, or embedding
    #[arg(long)]
    feature: Option<String>,
    /// Classifier: svm, nb, lstm, or gru
    #[arg(long)]
    model: Option<String>,
    #[command(flatten)]
    hyper: HyperOpts,
}

#[derive(Args, Debug)]
struct PredictArgs {
    /// Saved `.ideomodel` file
    #[arg(long)]
    model_file: PathBuf,
    /// Classify this one text
    #[arg(long, conflicts_with = "input")]
    text: Option<String>,
    /// Classify each line of this file (stdin when neither flag is given)
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    /// Saved `.ideomodel` file
    #[arg(long)]
    model_file: PathBuf,
    /// Labeled dataset to score against
    #[arg(long)]
    data: PathBuf,
    /// Also write metrics.json into this directory
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    common: CommonOpts,
    #[command(flatten)]
    hyper: HyperOpts,
}

// ---------------------------------------------------------------------
// Configuration resolution: defaults ← config file ← flags
// ---------------------------------------------------------------------

/// Every tunable of a run, fully resolved.
#[derive(Debug, Clone, PartialEq)]
struct RunConfig {
    data: Option<PathBuf>,
    feature: Option<FeatureKind>,
    model: Option<ModelKind>,
    stopwords: Option<PathBuf>,
    script_ranges: Vec<(u32, u32)>,
    out: PathBuf,
    test_fraction: f64,
    params: HyperParams,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            data: None,
            feature: None,
            model: None,
            stopwords: None,
            script_ranges: vec![BANGLA_BLOCK],
            out: PathBuf::from("."),
            test_fraction: 0.2,
            params: HyperParams::default(),
        }
    }
}

fn bad_value<T>(key: &str, value: &str, expected: &str) -> Result<T> {
    Err(Error::InvalidOption {
        key: key.to_string(),
        message: format!("cannot parse {value:?} as {expected}"),
    })
}

fn parse_usize(key: &str, value: &str) -> Result<usize> {
    value
        .parse()
        .or_else(|_| bad_value(key, value, "an unsigned integer"))
}

fn parse_u64(key: &str, value: &str) -> Result<u64> {
    value
        .parse()
        .or_else(|_| bad_value(key, value, "an unsigned integer"))
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    match value.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => bad_value(key, value, "a finite number"),
    }
}

/// Parse one `HEXLO-HEXHI` codepoint range, e.g. `0980-09FF`.
fn parse_script_range(text: &str) -> Result<(u32, u32)> {
    let parse_part = |part: &str| {
        u32::from_str_radix(part, 16)
            .or_else(|_| bad_value("script-range", part, "a hexadecimal codepoint"))
    };
    match text.split_once('-') {
        Some((lo, hi)) => Ok((parse_part(lo.trim())?, parse_part(hi.trim())?)),
        None => bad_value("script-range", text, "HEXLO-HEXHI"),
    }
}

/// Parse a flat `key=value` settings file. Blank lines and lines whose
/// first non-space character is `#` are skipped; values are taken
/// verbatim after trimming, so `#` never starts an inline comment.
fn parse_config_file(path: &Path) -> Result<Vec<(String, String)>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    let mut pairs = Vec::new();
    for (number, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split_once('=') {
            Some((key, value)) => pairs.push((key.trim().to_string(), value.trim().to_string())),
            None => {
                return Err(Error::InvalidOption {
                    key: "config".to_string(),
                    message: format!(
                        "{}:{}: expected key=value, found {line:?}",
                        path.display(),
                        number + 1
                    ),
                });
            }
        }
    }
    Ok(pairs)
}

/// Apply one key=value setting (config-file key or flag equivalent).
fn apply_setting(config: &mut RunConfig, key: &str, value: &str) -> Result<()> {
    let p = &mut config.params;
    match key {
        "data" => config.data = Some(PathBuf::from(value)),
        "feature" => config.feature = Some(value.parse()?),
        "model" => config.model = Some(value.parse()?),
        "stopwords" => config.stopwords = Some(PathBuf::from(value)),
        "out" => config.out = PathBuf::from(value),
        "test_fraction" => config.test_fraction = parse_f64(key, value)?,
        "script_range" => {
            config.script_ranges = value
                .split(',')
                .map(parse_script_range)
                .collect::<Result<Vec<_>>>()?;
        }
        "seed" => p.seed = parse_u64(key, value)?,
        "tfidf_max_features" => p.tfidf_max_features = parse_usize(key, value)?,
        "ngram_lo" => p.ngram_lo = parse_usize(key, value)?,
        "ngram_hi" => p.ngram_hi = parse_usize(key, value)?,
        "embed_vocab" => p.embed_vocab = parse_usize(key, value)?,
        "embed_dim" => p.embed_dim = parse_usize(key, value)?,
        "sequence_length" => p.sequence_length = parse_usize(key, value)?,
        "w2v_window" => p.w2v_window = parse_usize(key, value)?,
        "w2v_negatives" => p.w2v_negatives = parse_usize(key, value)?,
        "w2v_epochs" => p.w2v_epochs = parse_usize(key, value)?,
        "w2v_lr0" => p.w2v_lr0 = parse_f64(key, value)?,
        "svm_lambda" => p.svm_lambda = parse_f64(key, value)?,
        "svm_epochs" => p.svm_epochs = parse_usize(key, value)?,
        "nb_alpha" => p.nb_alpha = parse_f64(key, value)?,
        "hidden_units" => p.hidden_units = parse_usize(key, value)?,
        "rnn_lr" => p.rnn_lr = parse_f64(key, value)?,
        "rnn_rho" => p.rnn_rho = parse_f64(key, value)?,
        "rnn_epsilon" => p.rnn_epsilon = parse_f64(key, value)?,
        "batch_size" => p.batch_size = parse_usize(key, value)?,
        "rnn_epochs" => p.rnn_epochs = parse_usize(key, value)?,
        "clip_norm" => p.clip_norm = parse_f64(key, value)?,
        other => {
            return Err(Error::InvalidOption {
                key: other.to_string(),
                message: "unknown configuration key".to_string(),
            });
        }
    }
    Ok(())
}

macro_rules! apply_flag {
    ($config:ident, $opts:ident, $($field:ident),+ $(,)?) => {
        $(if let Some(value) = &$opts.$field {
            $config.params.$field = value.clone();
        })+
    };
}

/// Merge defaults ← config file ← flags, in that order.
fn resolve(
    common: &CommonOpts,
    feature: Option<&str>,
    model: Option<&str>,
    hyper: &HyperOpts,
) -> Result<RunConfig> {
    let mut config = RunConfig::default();
    if let Some(path) = &common.config {
        for (key, value) in parse_config_file(path)? {
            apply_setting(&mut config, &key, &value)?;
        }
    }
    if let Some(path) = &common.data {
        config.data = Some(path.clone());
    }
    if let Some(path) = &common.stopwords {
        config.stopwords = Some(path.clone());
    }
    if !common.script_range.is_empty() {
        config.script_ranges = common
            .script_range
            .iter()
            .map(|r| parse_script_range(r))
            .collect::<Result<Vec<_>>>()?;
    }
    if let Some(path) = &common.out {
        config.out = path.clone();
    }
    if let Some(seed) = common.seed {
        config.params.seed = seed;
    }
    if let Some(fraction) = common.test_fraction {
        config.test_fraction = fraction;
    }
    if let Some(feature) = feature {
        config.feature = Some(feature.parse()?);
    }
    if let Some(model) = model {
        config.model = Some(model.parse()?);
    }
    apply_flag!(
        config,
        hyper,
        tfidf_max_features,
        ngram_lo,
        ngram_hi,
        embed_vocab,
        embed_dim,
        sequence_length,
        w2v_window,
        w2v_negatives,
        w2v_epochs,
        w2v_lr0,
        svm_lambda,
        svm_epochs,
        nb_alpha,
        hidden_units,
        rnn_lr,
        rnn_rho,
        rnn_epsilon,
        batch_size,
        rnn_epochs,
        clip_norm,
    );

    if !(config.test_fraction > 0.0 && config.test_fraction < 1.0) {
        return Err(Error::InvalidOption {
            key: "test-fraction".to_string(),
            message: format!(
                "must be strictly between 0 and 1, got {}",
                config.test_fraction
            ),
        });
    }
    config.params.validate()?;
    Ok(config)
}

fn require<T: Clone>(value: &Option<T>, flag: &str) -> Result<T> {
    value.clone().ok_or_else(|| Error::InvalidOption {
        key: flag.to_string(),
        message: format!("--{flag} is required (flag or config file)"),
    })
}

impl RunConfig {
    fn preprocess(&self) -> Result<PreprocessConfig> {
        let stopwords = match &self.stopwords {
            Some(path) => load_stopwords(path)?,
            None => Default::default(),
        };
        PreprocessConfig::new(self.script_ranges.clone(), stopwords)
    }

    fn load_data(&self) -> Result<Corpus> {
        let path = require(&self.data, "data")?;
        load_corpus(&path, TableFormat::from_path(&path))
    }

    /// The fully resolved configuration as it is echoed into artifacts.
    fn echo(&self, command: &str) -> ResolvedConfig {
        let display_path = |p: &Option<PathBuf>| {
            p.as_ref()
                .map_or_else(|| "(none)".to_string(), |p| p.display().to_string())
        };
        let mut map = ResolvedConfig::from([
            ("command".to_string(), command.to_string()),
            ("data".to_string(), display_path(&self.data)),
            (
                "feature".to_string(),
                self.feature
                    .map_or_else(|| "(all)".to_string(), |f| f.to_string()),
            ),
            (
                "model".to_string(),
                self.model
                    .map_or_else(|| "(all)".to_string(), |m| m.to_string()),
            ),
            ("stopwords".to_string(), display_path(&self.stopwords)),
            (
                "script_range".to_string(),
                self.script_ranges
                    .iter()
                    .map(|(lo, hi)| format!("{lo:04X}-{hi:04X}"))
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            ("out".to_string(), self.out.display().to_string()),
            ("test_fraction".to_string(), self.test_fraction.to_string()),
        ]);
        for (key, value) in hyperparam_entries(&self.params) {
            map.insert(key.to_string(), value);
        }
        map
    }
}

/// All hyperparameters as display strings (floats use the shortest
/// round-trip form, so the echo is exact).
fn hyperparam_entries(p: &HyperParams) -> Vec<(&'static str, String)> {
    vec![
        ("seed", p.seed.to_string()),
        ("tfidf_max_features", p.tfidf_max_features.to_string()),
        ("ngram_lo", p.ngram_lo.to_string()),
        ("ngram_hi", p.ngram_hi.to_string()),
        ("embed_vocab", p.embed_vocab.to_string()),
        ("embed_dim", p.embed_dim.to_string()),
        ("sequence_length", p.sequence_length.to_string()),
        ("w2v_window", p.w2v_window.to_string()),
        ("w2v_negatives", p.w2v_negatives.to_string()),
        ("w2v_epochs", p.w2v_epochs.to_string()),
        ("w2v_lr0", p.w2v_lr0.to_string()),
        ("svm_lambda", p.svm_lambda.to_string()),
        ("svm_epochs", p.svm_epochs.to_string()),
        ("nb_alpha", p.nb_alpha.to_string()),
        ("hidden_units", p.hidden_units.to_string()),
        ("rnn_lr", p.rnn_lr.to_string()),
        ("rnn_rho", p.rnn_rho.to_string()),
        ("rnn_epsilon", p.rnn_epsilon.to_string()),
        ("batch_size", p.batch_size.to_string()),
        ("rnn_epochs", p.rnn_epochs.to_string()),
        ("clip_norm", p.clip_norm.to_string()),
    ]
}

// ---------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------

fn write_artifact(dir: &Path, name: &str, content: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir.display().to_string(), e))?;
    let path = dir.join(name);
    std::fs::write(&path, content).map_err(|e| Error::io(path.display().to_string(), e))?;
    Ok(path)
}

fn cmd_ingest_info(args: &IngestInfoArgs) -> Result<()> {
    let config = resolve(&args.common, None, None, &HyperOpts::default())?;
    let corpus = config.load_data()?;
    let preprocess = config.preprocess()?;

    println!("source: {}", corpus.source_path());
    println!("documents: {}", corpus.len());
    println!("classes: {}", corpus.num_classes());
    println!();
    let distribution = class_distribution(&corpus);
    let name_width = distribution
        .keys()
        .map(|name| name.chars().count())
        .max()
        .unwrap_or(5)
        .max(5);
    println!("{:<name_width$}  {:>8}", "class", "count");
    for (name, count) in &distribution {
        println!("{name:<name_width$}  {count:>8}");
    }
    println!();

    let mut total_tokens = 0usize;
    let mut vocabulary = std::collections::BTreeSet::new();
    let mut empty_documents = 0usize;
    for doc in corpus.documents() {
        let seq = preprocess_document(doc, &preprocess);
        total_tokens += seq.tokens.len();
        if seq.tokens.is_empty() {
            empty_documents += 1;
        }
        vocabulary.extend(seq.tokens);
    }
    println!("tokens after preprocessing: {total_tokens}");
    println!("distinct tokens: {}", vocabulary.len());
    println!("documents empty after preprocessing: {empty_documents}");
    Ok(())
}

fn split_corpus(config: &RunConfig, corpus: &Corpus) -> Result<crate::corpus::Split> {
    stratified_split(corpus, config.test_fraction, config.params.seed)
}

fn test_metrics(
    pipeline: &TrainedPipeline,
    corpus: &Corpus,
    test_indices: &[usize],
) -> Result<MetricsReport> {
    let mut y_true = Vec::with_capacity(test_indices.len());
    let mut y_pred = Vec::with_capacity(test_indices.len());
    for &i in test_indices {
        let doc = &corpus.documents()[i];
        y_true.push(doc.label);
        y_pred.push(pipeline.predict(&doc.text).0);
    }
    score(&y_true, &y_pred)
}

fn cmd_train(args: &TrainArgs) -> Result<()> {
    let config = resolve(
        &args.common,
        args.feature.as_deref(),
        args.model.as_deref(),
        &args.hyper,
    )?;
    let feature = require(&config.feature, "feature")?;
    let model = require(&config.model, "model")?;
    let corpus = config.load_data()?;
    let preprocess = config.preprocess()?;
    let split = split_corpus(&config, &corpus)?;

    println!(
        "training {feature}+{model} on {} documents (seed {})",
        split.train_indices.len(),
        config.params.seed
    );
    let pipeline = train_pipeline(
        &corpus,
        &split.train_indices,
        feature,
        model,
        &preprocess,
        &config.params,
    )?;
    let metrics = test_metrics(&pipeline, &corpus, &split.test_indices)?;
    println!(
        "test accuracy {:.4}, macro-F1 {:.4} over {} documents",
        metrics.accuracy, metrics.macro_f1, metrics.n_samples
    );

    let model_path = config.out.join("model.ideomodel");
    std::fs::create_dir_all(&config.out)
        .map_err(|e| Error::io(config.out.display().to_string(), e))?;
    persist::save(&pipeline, &model_path)?;
    println!("wrote {}", model_path.display());

    let echo = config.echo("train");
    let metrics_path = write_artifact(
        &config.out,
        "metrics.json",
        &render_single_json(&echo, feature, model, &metrics),
    )?;
    println!("wrote {}", metrics_path.display());
    Ok(())
}

fn predict_inputs(args: &PredictArgs) -> Result<Vec<String>> {
    if let Some(text) = &args.text {
        return Ok(vec![text.clone()]);
    }
    if let Some(path) = &args.input {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        return Ok(text.lines().map(str::to_string).collect());
    }
    let mut lines = Vec::new();
    for line in std::io::stdin().lock().lines() {
        lines.push(line.map_err(|e| Error::io("<stdin>".to_string(), e))?);
    }
    Ok(lines)
}

fn cmd_predict(args: &PredictArgs) -> Result<()> {
    let pipeline = persist::load(&args.model_file)?;
    for line in predict_inputs(args)? {
        let (name, score) = pipeline.predict_named(&line);
        println!("{name}\t{score}");
    }
    Ok(())
}

fn cmd_evaluate(args: &EvaluateArgs) -> Result<()> {
    let pipeline = persist::load(&args.model_file)?;
    let corpus = load_corpus(&args.data, TableFormat::from_path(&args.data))?;
    if corpus.class_names() != pipeline.class_names.as_slice() {
        return Err(Error::Pipeline(format!(
            "dataset classes {:?} do not match the model's classes {:?}",
            corpus.class_names(),
            pipeline.class_names
        )));
    }
    let all_indices: Vec<usize> = (0..corpus.len()).collect();
    let metrics = test_metrics(&pipeline, &corpus, &all_indices)?;

    let mut echo = ResolvedConfig::from([
        ("command".to_string(), "evaluate".to_string()),
        ("data".to_string(), args.data.display().to_string()),
        (
            "model_file".to_string(),
            args.model_file.display().to_string(),
        ),
        ("feature".to_string(), pipeline.feature.to_string()),
        ("model".to_string(), pipeline.model.to_string()),
        (
            "corpus_fingerprint".to_string(),
            pipeline.corpus_fingerprint.clone(),
        ),
    ]);
    for (key, value) in hyperparam_entries(&pipeline.params) {
        echo.insert(key.to_string(), value);
    }
    let rendered = render_single_json(&echo, pipeline.feature, pipeline.model, &metrics);
    print!("{rendered}");
    if let Some(out) = &args.out {
        let path = write_artifact(out, "metrics.json", &rendered)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_compare(args: &CompareArgs) -> Result<()> {
    let config = resolve(&args.common, None, None, &args.hyper)?;
    let corpus = config.load_data()?;
    let preprocess = config.preprocess()?;
    let split = split_corpus(&config, &corpus)?;

    println!(
        "comparing {} feature sets × {} models on {} train / {} test documents",
        FeatureKind::ALL.len(),
        ModelKind::ALL.len(),
        split.train_indices.len(),
        split.test_indices.len()
    );
    let grid = run_grid(&corpus, &split, &preprocess, &config.params);
    for cell in &grid.cells {
        match (&cell.metrics, &cell.error) {
            (Some(m), _) => println!(
                "{:>12}+{:<4}  accuracy {:.4}  macro-F1 {:.4}",
                cell.feature.to_string(),
                cell.model.to_string(),
                m.accuracy,
                m.macro_f1
            ),
            (None, error) => println!(
                "{:>12}+{:<4}  failed: {}",
                cell.feature.to_string(),
                cell.model.to_string(),
                error.as_deref().unwrap_or("unknown error")
            ),
        }
    }
    if grid.cells.iter().all(|c| c.metrics.is_none()) {
        return Err(Error::Pipeline("every grid cell failed".to_string()));
    }
    if let Some((feature, model)) = grid.best {
        println!("best cell: {feature}+{model}");
    }

    let echo = config.echo("compare");
    for (name, content) in [
        ("metrics.json", render_grid_json(&echo, &grid)),
        ("comparison.md", render_markdown_tables(&echo, &grid)),
        ("comparison.svg", render_svg_chart(&echo, &grid)),
    ] {
        let path = write_artifact(&config.out, name, &content)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

// ---------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------

fn dispatch(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::IngestInfo(args) => cmd_ingest_info(args),
        Command::Train(args) => cmd_train(args),
        Command::Predict(args) => cmd_predict(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Compare(args) => cmd_compare(args),
    }
}

/// Exit code for a pipeline-level error: usage problems (unknown keys,
/// unparseable values, out-of-range settings) are 2, everything that
/// happens after a well-formed invocation is 1.
fn exit_code(error: &Error) -> i32 {
    match error {
        Error::InvalidOption { .. } | Error::InvalidConfig(_) => 2,
        _ => 1,
    }
}

/// Parse arguments, run the selected subcommand, and return the process
/// exit code (0 ok, 1 pipeline error, 2 usage error).
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version to stdout (exit 0) and usage
            // errors to stderr (exit 2)
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
