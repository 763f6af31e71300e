//! Script-aware text preprocessing: keep only characters of the target
//! script, tokenize on whitespace, drop stopwords.
//!
//! The pipeline deliberately applies no stemming, no lemmatization and no
//! Unicode normalization, so elongated emphasis forms ("ভালোওওও") reach the
//! feature extractors intact. Characters outside the configured script
//! ranges become word boundaries (a single space), never the empty string,
//! so fused spans like "রাজনীতি123রাজনীতি" split into two tokens instead of
//! collapsing into one.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default script block: Bengali, U+0980..=U+09FF. Covers vowels,
/// consonants, vowel signs and the Bangla digits ০–৯. The danda (।, U+0964)
/// lives in the Devanagari block and is therefore *not* retained by the
/// default filter; it still shows up in stylometric counts, which run on
/// raw text.
pub const BANGLA_BLOCK: (u32, u32) = (0x0980, 0x09FF);

/// Character-filtering and stopword configuration shared by the whole
/// pipeline. Whitespace is always the token separator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreprocessConfig {
    /// Inclusive codepoint intervals to retain; everything else becomes a space.
    pub script_ranges: Vec<(u32, u32)>,
    /// Tokens removed after tokenization. Matching is exact string equality.
    pub stopwords: BTreeSet<String>,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        PreprocessConfig {
            script_ranges: vec![BANGLA_BLOCK],
            stopwords: BTreeSet::new(),
        }
    }
}

impl PreprocessConfig {
    /// Build a validated config. Ranges must be non-empty with lo ≤ hi;
    /// stopword entries must be nonempty and free of whitespace.
    pub fn new(script_ranges: Vec<(u32, u32)>, stopwords: BTreeSet<String>) -> Result<Self> {
        if script_ranges.is_empty() {
            return Err(Error::InvalidConfig(
                "script_ranges must be non-empty".into(),
            ));
        }
        for &(lo, hi) in &script_ranges {
            if lo > hi {
                return Err(Error::InvalidConfig(format!(
                    "invalid script range {lo:#06X}-{hi:#06X}: lo > hi"
                )));
            }
        }
        for word in &stopwords {
            if word.is_empty() || word.chars().any(char::is_whitespace) {
                return Err(Error::InvalidConfig(format!(
                    "stopword entry {word:?} must be nonempty and contain no whitespace"
                )));
            }
        }
        Ok(PreprocessConfig {
            script_ranges,
            stopwords,
        })
    }

    /// Default script block plus the given stopword set.
    pub fn with_stopwords(stopwords: BTreeSet<String>) -> Result<Self> {
        Self::new(vec![BANGLA_BLOCK], stopwords)
    }

    pub fn is_script_char(&self, c: char) -> bool {
        let cp = c as u32;
        self.script_ranges
            .iter()
            .any(|&(lo, hi)| cp >= lo && cp <= hi)
    }
}

/// Ordered tokens of one preprocessed document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSequence {
    pub tokens: Vec<String>,
    pub origin_id: String,
}

/// Replace every character outside the configured ranges with a space,
/// collapse space runs, and trim. Empty output is legal.
pub fn filter_script(text: &str, config: &PreprocessConfig) -> String {
    let mapped: String = text
        .chars()
        .map(|c| if config.is_script_char(c) { c } else { ' ' })
        .collect();
    mapped.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Whitespace tokenization; never yields empty tokens.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace().map(str::to_owned).collect()
}

/// Drop tokens that appear in the stopword set, preserving order.
pub fn remove_stopwords(tokens: Vec<String>, config: &PreprocessConfig) -> Vec<String> {
    tokens
        .into_iter()
        .filter(|t| !config.stopwords.contains(t))
        .collect()
}

/// Full chain: script filter → tokenize → stopword removal.
pub fn preprocess_text(text: &str, config: &PreprocessConfig) -> Vec<String> {
    remove_stopwords(tokenize(&filter_script(text, config)), config)
}

/// Preprocess one document into its token sequence.
pub fn preprocess_document(
    doc: &crate::corpus::Document,
    config: &PreprocessConfig,
) -> TokenSequence {
    TokenSequence {
        tokens: preprocess_text(&doc.text, config),
        origin_id: doc.id.clone(),
    }
}

/// Read a stopword file: UTF-8, one token per line, blank lines and lines
/// starting with `#` ignored, surrounding whitespace stripped.
pub fn load_stopwords(path: impl AsRef<Path>) -> Result<BTreeSet<String>> {
    let path = path.as_ref();
    let content =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    let mut out = BTreeSet::new();
    for line in content.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        out.insert(trimmed.to_owned());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PreprocessConfig {
        PreprocessConfig::default()
    }

    fn cfg_with(words: &[&str]) -> PreprocessConfig {
        PreprocessConfig::with_stopwords(words.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn filter_drops_latin_and_punctuation() {
        assert_eq!(filter_script("ভালো news!!!", &cfg()), "ভালো");
    }

    #[test]
    fn filter_empty_is_empty() {
        assert_eq!(filter_script("", &cfg()), "");
    }

    #[test]
    fn filter_replaces_with_space_not_nothing() {
        // ASCII digits split the halves instead of fusing them.
        assert_eq!(filter_script("রাজনীতি123রাজনীতি", &cfg()), "রাজনীতি রাজনীতি");
    }

    #[test]
    fn bangla_digits_survive_the_default_block() {
        assert_eq!(filter_script("৫টি", &cfg()), "৫টি");
    }

    #[test]
    fn tokenize_basic() {
        assert_eq!(tokenize("ভালো খবর"), vec!["ভালো", "খবর"]);
        assert_eq!(tokenize(""), Vec::<String>::new());
        assert_eq!(tokenize("ক খ ক"), vec!["ক", "খ", "ক"]);
    }

    #[test]
    fn stopword_removal() {
        let c = cfg_with(&["এই"]);
        let tokens = vec!["এই".to_string(), "খবর".to_string()];
        assert_eq!(remove_stopwords(tokens, &c), vec!["খবর"]);
    }

    #[test]
    fn empty_stopword_set_is_identity() {
        let tokens = vec!["ক".to_string(), "খ".to_string()];
        assert_eq!(remove_stopwords(tokens.clone(), &cfg()), tokens);
    }

    #[test]
    fn all_stopwords_yields_empty() {
        let c = cfg_with(&["ক", "খ"]);
        assert!(remove_stopwords(vec!["ক".into(), "খ".into()], &c).is_empty());
    }

    #[test]
    fn elongated_tokens_pass_through() {
        let out = preprocess_text("ভালোওওও", &cfg());
        assert_eq!(out, vec!["ভালোওওও"]);
    }

    #[test]
    fn non_script_only_gives_empty_sequence() {
        assert!(preprocess_text("hello world 123!", &cfg()).is_empty());
    }

    #[test]
    fn preprocess_is_idempotent_on_clean_text() {
        let c = cfg_with(&["এই"]);
        let first = preprocess_text("এই দল ভালো নয়", &c);
        let rejoined = first.join(" ");
        assert_eq!(preprocess_text(&rejoined, &c), first);
    }

    #[test]
    fn stopword_file_round_trip() {
        let dir = std::env::temp_dir().join("ideo-stopword-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("sw.txt");
        std::fs::write(&path, "এই\nও\n# note\n\n  তার  \n").unwrap();
        let words = load_stopwords(&path).unwrap();
        assert_eq!(
            words,
            ["এই", "ও", "তার"].iter().map(|s| s.to_string()).collect()
        );
        std::fs::write(&path, "").unwrap();
        assert!(load_stopwords(&path).unwrap().is_empty());
    }

    #[test]
    fn missing_stopword_file_errors() {
        assert!(load_stopwords("/nonexistent/sw.txt").is_err());
    }

    #[test]
    fn invalid_ranges_rejected() {
        assert!(PreprocessConfig::new(vec![], BTreeSet::new()).is_err());
        assert!(PreprocessConfig::new(vec![(5, 2)], BTreeSet::new()).is_err());
        let bad: BTreeSet<String> = ["দুই শব্দ".to_string()].into_iter().collect();
        assert!(PreprocessConfig::new(vec![BANGLA_BLOCK], bad).is_err());
    }
}
