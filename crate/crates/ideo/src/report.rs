//! Render evaluation results as artifacts: a machine-readable JSON
//! metrics file, per-feature markdown comparison tables, and a static
//! SVG bar chart.
//!
//! Every artifact embeds the fully resolved run configuration and
//! contains no timestamps or hostnames, so identical inputs render to
//! byte-identical files. The markdown and SVG renderers display the
//! best results reported by the original study as reference
//! annotations; nothing here asserts those numbers.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::evaluate::{GridReport, MetricsReport};
use crate::pipeline::{FeatureKind, ModelKind};

/// Accuracy and F1 percentages the original study reported for its
/// strongest configuration (word embeddings + LSTM). Reference display
/// only — never asserted against anything this crate computes.
pub const REPORTED_BEST_EMBEDDING_LSTM: (f64, f64) = (88.28, 85.41);

/// Accuracy percentage the original study reported as its best TF-IDF
/// result (with the GRU model). Reference display only.
pub const REPORTED_BEST_TFIDF_GRU_ACCURACY: f64 = 69.94;

/// Resolved run configuration as ordered key → value pairs, embedded
/// into every artifact. `BTreeMap` keeps the rendering order stable.
pub type ResolvedConfig = BTreeMap<String, String>;

#[derive(Serialize)]
struct GridArtifact<'a> {
    config: &'a ResolvedConfig,
    grid: &'a GridReport,
}

#[derive(Serialize)]
struct SingleArtifact<'a> {
    config: &'a ResolvedConfig,
    feature: FeatureKind,
    model: ModelKind,
    metrics: &'a MetricsReport,
}

fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("metric structs always serialize");
    text.push('\n');
    text
}

/// The full 3×4 grid plus the resolved configuration, as pretty JSON.
pub fn render_grid_json(config: &ResolvedConfig, grid: &GridReport) -> String {
    to_pretty_json(&GridArtifact { config, grid })
}

/// A single cell's metrics plus the resolved configuration, as pretty
/// JSON (the `train` and `evaluate` commands' metrics file).
pub fn render_single_json(
    config: &ResolvedConfig,
    feature: FeatureKind,
    model: ModelKind,
    metrics: &MetricsReport,
) -> String {
    to_pretty_json(&SingleArtifact {
        config,
        feature,
        model,
        metrics,
    })
}

fn feature_heading(feature: FeatureKind) -> &'static str {
    match feature {
        FeatureKind::Stylometric => "Stylometric features",
        FeatureKind::Tfidf => "TF-IDF features",
        FeatureKind::Embedding => "Word-embedding features",
    }
}

/// One markdown table per feature kind with `Model | Accuracy | F1`
/// columns (F1 is macro-F1, the headline metric), followed by the
/// original study's reported maxima as plain-text reference notes.
pub fn render_markdown_tables(config: &ResolvedConfig, grid: &GridReport) -> String {
    let mut out = String::new();
    out.push_str("# Model comparison\n\n");

    for feature in FeatureKind::ALL {
        let _ = writeln!(out, "## {}\n", feature_heading(feature));
        out.push_str("| Model | Accuracy | F1 |\n");
        out.push_str("|-------|----------|----|\n");
        let mut failures = Vec::new();
        for model in ModelKind::ALL {
            let cell = grid.cell(feature, model);
            match &cell.metrics {
                Some(m) => {
                    let _ = writeln!(out, "| {model} | {:.4} | {:.4} |", m.accuracy, m.macro_f1);
                }
                None => {
                    let _ = writeln!(out, "| {model} | — | — |");
                    let message = cell
                        .error
                        .clone()
                        .unwrap_or_else(|| "unknown error".to_string());
                    failures.push((model, message));
                }
            }
        }
        out.push('\n');
        for (model, message) in failures {
            let _ = writeln!(out, "> {model}: {message}\n");
        }
        match feature {
            FeatureKind::Tfidf => {
                let _ = writeln!(
                    out,
                    "*Reference: the original study reported its best TF-IDF accuracy \
                     as {:.2}% (GRU). Shown for comparison only.*\n",
                    REPORTED_BEST_TFIDF_GRU_ACCURACY
                );
            }
            FeatureKind::Embedding => {
                let (acc, f1) = REPORTED_BEST_EMBEDDING_LSTM;
                let _ = writeln!(
                    out,
                    "*Reference: the original study reported {acc:.2}% accuracy and \
                     {f1:.2}% F1 for word embeddings with LSTM. Shown for comparison only.*\n"
                );
            }
            FeatureKind::Stylometric => {}
        }
    }

    if let Some((feature, model)) = grid.best {
        let _ = writeln!(out, "Best cell: {feature} + {model}.\n");
    }

    out.push_str("## Run configuration\n\n```\n");
    for (key, value) in config {
        let _ = writeln!(out, "{key} = {value}");
    }
    out.push_str("```\n");
    out
}

fn xml_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

// Chart geometry. Everything is computed from these so the layout
// stays consistent if tweaked.
const BAR_WIDTH: f64 = 20.0;
const PAIR_GAP: f64 = 4.0; // between the accuracy and F1 bar of one model
const MODEL_GAP: f64 = 12.0; // between models inside a feature group
const GROUP_GAP: f64 = 48.0; // between feature groups
const PLOT_LEFT: f64 = 62.0;
const PLOT_TOP: f64 = 46.0;
const PLOT_HEIGHT: f64 = 300.0;

/// Static grouped bar chart: one group per feature, and per model an
/// accuracy bar and a macro-F1 bar. Pure text SVG — deterministic for
/// identical inputs, resolved config embedded in `<desc>`.
pub fn render_svg_chart(config: &ResolvedConfig, grid: &GridReport) -> String {
    let model_width = 2.0 * BAR_WIDTH + PAIR_GAP;
    let group_width = 4.0 * model_width + 3.0 * MODEL_GAP;
    let width = PLOT_LEFT + 3.0 * group_width + 2.0 * GROUP_GAP + 24.0;
    let baseline = PLOT_TOP + PLOT_HEIGHT;
    let height = baseline + 64.0;

    let mut desc = String::from("Resolved run configuration:\n");
    for (key, value) in config {
        let _ = writeln!(desc, "{key} = {value}");
    }
    let (ref_acc, ref_f1) = REPORTED_BEST_EMBEDDING_LSTM;
    let _ = writeln!(
        desc,
        "Reference (original study, displayed only): embedding+lstm accuracy {ref_acc:.2}% \
         / F1 {ref_f1:.2}%; best tfidf accuracy {REPORTED_BEST_TFIDF_GRU_ACCURACY:.2}% (gru)."
    );

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width:.0} {height:.0}\" \
         width=\"{width:.0}\" height=\"{height:.0}\" role=\"img\">"
    );
    let _ = writeln!(
        svg,
        "  <title>Accuracy and macro-F1 per feature and model</title>"
    );
    let _ = writeln!(svg, "  <desc>{}</desc>", xml_escape(&desc));
    let _ = writeln!(
        svg,
        "  <rect x=\"0\" y=\"0\" width=\"{width:.0}\" height=\"{height:.0}\" fill=\"#ffffff\"/>"
    );

    // y axis with gridlines every 0.25
    for step in 0..=4 {
        let value = f64::from(step) * 0.25;
        let y = baseline - value * PLOT_HEIGHT;
        let _ = writeln!(
            svg,
            "  <line x1=\"{PLOT_LEFT:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" \
             stroke=\"#d0d0d0\" stroke-width=\"1\"/>",
            width - 12.0
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"end\" fill=\"#444444\">{value:.2}</text>",
            PLOT_LEFT - 8.0,
            y + 4.0
        );
    }

    // legend
    let legend_x = width - 190.0;
    let _ = writeln!(
        svg,
        "  <rect x=\"{legend_x:.1}\" y=\"14\" width=\"12\" height=\"12\" fill=\"#3465a4\"/>\
         <text x=\"{:.1}\" y=\"24\" font-family=\"sans-serif\" font-size=\"11\" \
         fill=\"#222222\">accuracy</text>",
        legend_x + 17.0
    );
    let _ = writeln!(
        svg,
        "  <rect x=\"{:.1}\" y=\"14\" width=\"12\" height=\"12\" fill=\"#f57900\"/>\
         <text x=\"{:.1}\" y=\"24\" font-family=\"sans-serif\" font-size=\"11\" \
         fill=\"#222222\">macro-F1</text>",
        legend_x + 92.0,
        legend_x + 109.0
    );

    for (g, feature) in FeatureKind::ALL.into_iter().enumerate() {
        let group_x = PLOT_LEFT + g as f64 * (group_width + GROUP_GAP);
        let _ = writeln!(
            svg,
            "  <g class=\"feature-group\" id=\"feature-{feature}\">"
        );
        for (m, model) in ModelKind::ALL.into_iter().enumerate() {
            let model_x = group_x + m as f64 * (model_width + MODEL_GAP);
            let cell = grid.cell(feature, model);
            match &cell.metrics {
                Some(metrics) => {
                    for (b, (value, fill)) in
                        [(metrics.accuracy, "#3465a4"), (metrics.macro_f1, "#f57900")]
                            .into_iter()
                            .enumerate()
                    {
                        let x = model_x + b as f64 * (BAR_WIDTH + PAIR_GAP);
                        let bar_height = value.clamp(0.0, 1.0) * PLOT_HEIGHT;
                        let y = baseline - bar_height;
                        let _ = writeln!(
                            svg,
                            "    <rect x=\"{x:.1}\" y=\"{y:.1}\" width=\"{BAR_WIDTH:.1}\" \
                             height=\"{bar_height:.1}\" fill=\"{fill}\"><title>{feature} {model} \
                             {}: {value:.4}</title></rect>",
                            if b == 0 { "accuracy" } else { "macro-F1" }
                        );
                    }
                }
                None => {
                    let _ = writeln!(
                        svg,
                        "    <text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" \
                         font-size=\"11\" text-anchor=\"middle\" fill=\"#a40000\">n/a</text>",
                        model_x + model_width / 2.0,
                        baseline - 6.0
                    );
                }
            }
            let _ = writeln!(
                svg,
                "    <text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\" \
                 text-anchor=\"middle\" fill=\"#222222\">{model}</text>",
                model_x + model_width / 2.0,
                baseline + 16.0
            );
        }
        let _ = writeln!(
            svg,
            "    <text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"13\" \
             font-weight=\"bold\" text-anchor=\"middle\" fill=\"#222222\">{}</text>",
            group_x + group_width / 2.0,
            baseline + 36.0,
            feature_heading(feature)
        );
        let _ = writeln!(svg, "  </g>");
    }

    let _ = writeln!(
        svg,
        "  <text x=\"{PLOT_LEFT:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\" \
         fill=\"#555555\">Reference from the original study (not asserted): embedding+lstm \
         {ref_acc:.2}% accuracy / {ref_f1:.2}% F1; best tfidf \
         {REPORTED_BEST_TFIDF_GRU_ACCURACY:.2}% (gru).</text>",
        baseline + 54.0
    );
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::stratified_split;
    use crate::evaluate::run_grid;
    use crate::pipeline::HyperParams;
    use crate::preprocess::PreprocessConfig;
    use crate::synthetic::{two_topic_corpus, TwoTopicSpec};

    fn small_grid() -> GridReport {
        let spec = TwoTopicSpec {
            docs_per_class: 15,
            ..TwoTopicSpec::default()
        };
        let corpus = two_topic_corpus(&spec);
        let split = stratified_split(&corpus, 0.2, 7).unwrap();
        let params = HyperParams {
            embed_dim: 6,
            w2v_epochs: 1,
            hidden_units: 4,
            rnn_epochs: 1,
            sequence_length: 20,
            svm_epochs: 5,
            tfidf_max_features: 40,
            ..HyperParams::default()
        };
        run_grid(&corpus, &split, &PreprocessConfig::default(), &params)
    }

    fn demo_config() -> ResolvedConfig {
        ResolvedConfig::from([
            ("seed".to_string(), "42".to_string()),
            ("feature".to_string(), "all".to_string()),
            ("data".to_string(), "corpus & <friends>.csv".to_string()),
        ])
    }

    /// Minimal well-formedness check: every open tag is closed in LIFO
    /// order, attributes are quote-balanced, and text nodes contain no
    /// raw `<`, `>`, or `&` outside entities.
    fn assert_well_formed_xml(text: &str) {
        let mut stack: Vec<String> = Vec::new();
        let mut rest = text;
        while let Some(start) = rest.find('<') {
            let before = &rest[..start];
            assert!(
                !before.contains('>'),
                "stray '>' in text node near {before:?}"
            );
            for (i, c) in before.char_indices() {
                if c == '&' {
                    let tail = &before[i..];
                    assert!(
                        ["&amp;", "&lt;", "&gt;", "&quot;", "&apos;"]
                            .iter()
                            .any(|e| tail.starts_with(e)),
                        "raw '&' in text node near {tail:?}"
                    );
                }
            }
            let end = rest[start..].find('>').expect("unterminated tag") + start;
            let tag = &rest[start + 1..end];
            assert!(!tag.contains('<'), "nested '<' inside tag {tag:?}");
            assert_eq!(
                tag.matches('"').count() % 2,
                0,
                "unbalanced quotes in {tag:?}"
            );
            if let Some(name) = tag.strip_prefix('/') {
                assert_eq!(
                    stack.pop().as_deref(),
                    Some(name.trim()),
                    "close/open mismatch"
                );
            } else if !tag.ends_with('/') && !tag.starts_with('?') && !tag.starts_with('!') {
                let name = tag.split_whitespace().next().unwrap().to_string();
                stack.push(name);
            }
            rest = &rest[end + 1..];
        }
        assert!(stack.is_empty(), "unclosed tags: {stack:?}");
    }

    #[test]
    fn markdown_has_three_tables_with_the_contract_columns() {
        let grid = small_grid();
        let md = render_markdown_tables(&demo_config(), &grid);
        assert_eq!(md.matches("| Model | Accuracy | F1 |").count(), 3);
        for heading in [
            "## Stylometric features",
            "## TF-IDF features",
            "## Word-embedding features",
        ] {
            assert!(md.contains(heading), "missing {heading}");
        }
        // one row per model in each table
        for model in ["| svm |", "| nb |", "| lstm |", "| gru |"] {
            assert_eq!(
                md.matches(model).count(),
                3,
                "{model} must appear once per table"
            );
        }
        // reference annotations displayed, clearly marked as external
        assert!(md.contains("88.28%") && md.contains("85.41%") && md.contains("69.94%"));
        assert!(md.contains("original study"));
        // resolved config echoed
        assert!(md.contains("seed = 42"));
    }

    #[test]
    fn svg_is_well_formed_with_one_group_per_feature() {
        let grid = small_grid();
        let svg = render_svg_chart(&demo_config(), &grid);
        assert_well_formed_xml(&svg);
        assert_eq!(svg.matches("<g class=\"feature-group\"").count(), 3);
        // 12 successful cells × 2 bars
        assert_eq!(
            svg.matches("<rect").count(),
            24 + 3,
            "24 bars + background + 2 legend swatches"
        );
        // config echoed in <desc>, with XML-unsafe characters escaped
        assert!(svg.contains("<desc>"));
        assert!(svg.contains("corpus &amp; &lt;friends&gt;.csv"));
        assert!(!svg.to_lowercase().contains("timestamp"));
    }

    #[test]
    fn failed_cells_render_as_gaps_not_errors() {
        let mut grid = small_grid();
        let idx = grid
            .cells
            .iter()
            .position(|c| c.feature == FeatureKind::Tfidf && c.model == ModelKind::Gru)
            .unwrap();
        grid.cells[idx].metrics = None;
        grid.cells[idx].error = Some("synthetic failure <for> testing".to_string());

        let md = render_markdown_tables(&demo_config(), &grid);
        assert!(md.contains("| gru | — | — |"));
        assert!(md.contains("> gru: synthetic failure"));

        let svg = render_svg_chart(&demo_config(), &grid);
        assert_well_formed_xml(&svg);
        assert_eq!(svg.matches("<rect").count(), 22 + 3, "two bars fewer");
        assert!(svg.contains(">n/a</text>"));
    }

    #[test]
    fn renders_are_deterministic() {
        let grid = small_grid();
        let config = demo_config();
        assert_eq!(
            render_markdown_tables(&config, &grid),
            render_markdown_tables(&config, &grid)
        );
        assert_eq!(
            render_svg_chart(&config, &grid),
            render_svg_chart(&config, &grid)
        );
        assert_eq!(
            render_grid_json(&config, &grid),
            render_grid_json(&config, &grid)
        );
    }

    #[test]
    fn json_artifacts_parse_back() {
        let grid = small_grid();
        let config = demo_config();
        let text = render_grid_json(&config, &grid);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["config"]["seed"], "42");
        assert_eq!(value["grid"]["cells"].as_array().unwrap().len(), 12);

        let cell = grid.cell(FeatureKind::Stylometric, ModelKind::Svm);
        let single = render_single_json(
            &config,
            FeatureKind::Stylometric,
            ModelKind::Svm,
            cell.metrics.as_ref().unwrap(),
        );
        let value: serde_json::Value = serde_json::from_str(&single).unwrap();
        assert_eq!(value["feature"], "stylometric");
        assert!(value["metrics"]["accuracy"].is_number());
    }
}
