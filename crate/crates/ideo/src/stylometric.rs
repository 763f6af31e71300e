//! Writing-style features: fixed-length dense vectors that describe *how*
//! a document is written rather than what it is about.
//!
//! Features are computed on the **raw** text, before script filtering, so
//! punctuation marks ('!', '?', '।') and digits are visible even though the
//! model-input path strips them. Ratios with a zero denominator are
//! defined as 0, so the empty document maps to the all-zero vector.

use ndarray::Array1;

use crate::corpus::Document;
use crate::error::{Error, Result};
use crate::preprocess::{filter_script, preprocess_text, tokenize, PreprocessConfig};

/// Number of stylometric components.
pub const STYLO_DIM: usize = 12;

/// One document's style profile. Component layout:
///
/// | idx | feature                                                |
/// |-----|--------------------------------------------------------|
/// | 0   | character count (Unicode scalar values)                |
/// | 1   | token count (whitespace split of raw text)             |
/// | 2   | mean token length in characters                        |
/// | 3   | sentence count (split on any of । ! ? .)               |
/// | 4   | mean sentence length in tokens                         |
/// | 5   | '!' count                                              |
/// | 6   | '?' count                                              |
/// | 7   | '।' count                                              |
/// | 8   | elongated-token count (run of ≥ 3 identical chars)     |
/// | 9   | type-token ratio of the preprocessed tokens            |
/// | 10  | digit-character ratio (ASCII 0-9 and Bangla ০-৯)        |
/// | 11  | stopword ratio among script-filtered tokens            |
#[derive(Debug, Clone, PartialEq)]
pub struct StyloVector {
    pub values: [f64; STYLO_DIM],
    pub origin_id: String,
}

/// A token is "elongated" when some character repeats ≥ 3 times in a row.
pub fn is_elongated(token: &str) -> bool {
    let mut run = 0usize;
    let mut prev: Option<char> = None;
    for c in token.chars() {
        if Some(c) == prev {
            run += 1;
        } else {
            run = 1;
            prev = Some(c);
        }
        if run >= 3 {
            return true;
        }
    }
    false
}

fn is_counted_digit(c: char) -> bool {
    c.is_ascii_digit() || ('\u{09E6}'..='\u{09EF}').contains(&c)
}

fn mean(sum: f64, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

/// Extract the 12 style features of one document.
pub fn extract_stylometric(doc: &Document, config: &PreprocessConfig) -> StyloVector {
    let text = &doc.text;
    let char_count = text.chars().count();

    let raw_tokens: Vec<&str> = text.split_whitespace().collect();
    let token_count = raw_tokens.len();
    let token_len_sum: usize = raw_tokens.iter().map(|t| t.chars().count()).sum();

    let sentences: Vec<&str> = text
        .split(['।', '!', '?', '.'])
        .filter(|s| !s.trim().is_empty())
        .collect();
    let sentence_count = sentences.len();
    let sentence_token_sum: usize = sentences.iter().map(|s| s.split_whitespace().count()).sum();

    let mut bang = 0usize;
    let mut question = 0usize;
    let mut danda = 0usize;
    let mut digits = 0usize;
    for c in text.chars() {
        match c {
            '!' => bang += 1,
            '?' => question += 1,
            '।' => danda += 1,
            _ => {}
        }
        if is_counted_digit(c) {
            digits += 1;
        }
    }

    let elongated = raw_tokens.iter().filter(|t| is_elongated(t)).count();

    let clean_tokens = preprocess_text(text, config);
    let type_token_ratio = if clean_tokens.is_empty() {
        0.0
    } else {
        let mut distinct: Vec<&String> = clean_tokens.iter().collect();
        distinct.sort();
        distinct.dedup();
        distinct.len() as f64 / clean_tokens.len() as f64
    };

    // Stopword share of script-filtered tokens, measured before removal.
    let filtered_tokens = tokenize(&filter_script(text, config));
    let stopword_ratio = if filtered_tokens.is_empty() {
        0.0
    } else {
        let hits = filtered_tokens
            .iter()
            .filter(|t| config.stopwords.contains(*t))
            .count();
        hits as f64 / filtered_tokens.len() as f64
    };

    let digit_ratio = if char_count == 0 {
        0.0
    } else {
        digits as f64 / char_count as f64
    };

    StyloVector {
        values: [
            char_count as f64,
            token_count as f64,
            mean(token_len_sum as f64, token_count),
            sentence_count as f64,
            mean(sentence_token_sum as f64, sentence_count),
            bang as f64,
            question as f64,
            danda as f64,
            elongated as f64,
            type_token_ratio,
            digit_ratio,
            stopword_ratio,
        ],
        origin_id: doc.id.clone(),
    }
}

/// Per-component z-score scaler. Constructed only by [`fit_scaler`], so a
/// scaler value is always fitted. Components whose training standard
/// deviation is zero are centered but not divided.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardScaler {
    means: Vec<f64>,
    stds: Vec<f64>,
}

/// Fit per-component mean and population standard deviation.
pub fn fit_scaler(vectors: &[StyloVector]) -> Result<StandardScaler> {
    if vectors.is_empty() {
        return Err(Error::EmptyFit);
    }
    let n = vectors.len() as f64;
    let mut means = vec![0.0; STYLO_DIM];
    for v in vectors {
        for (m, x) in means.iter_mut().zip(v.values.iter()) {
            *m += x;
        }
    }
    for m in &mut means {
        *m /= n;
    }
    let mut stds = vec![0.0; STYLO_DIM];
    for v in vectors {
        for (s, (x, m)) in stds.iter_mut().zip(v.values.iter().zip(means.iter())) {
            let d = x - m;
            *s += d * d;
        }
    }
    for s in &mut stds {
        *s = (*s / n).sqrt();
    }
    Ok(StandardScaler { means, stds })
}

impl StandardScaler {
    /// `(x - mean) / std` where `std > 0`, else `x - mean`.
    pub fn transform(&self, v: &StyloVector) -> Array1<f64> {
        Array1::from_iter(v.values.iter().enumerate().map(|(i, &x)| {
            let centered = x - self.means[i];
            if self.stds[i] > 0.0 {
                centered / self.stds[i]
            } else {
                centered
            }
        }))
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn stds(&self) -> &[f64] {
        &self.stds
    }

    /// Reassemble from stored state (used when loading a saved model).
    pub fn from_parts(means: Vec<f64>, stds: Vec<f64>) -> Result<Self> {
        if means.len() != STYLO_DIM || stds.len() != STYLO_DIM {
            return Err(Error::InvalidModel(format!(
                "scaler must have {STYLO_DIM} components, found {}/{}",
                means.len(),
                stds.len()
            )));
        }
        if stds.iter().any(|s| *s < 0.0) {
            return Err(Error::InvalidModel(
                "scaler stds must be nonnegative".into(),
            ));
        }
        Ok(StandardScaler { means, stds })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(text: &str) -> Document {
        Document {
            id: "t".into(),
            text: text.into(),
            label: 0,
        }
    }

    fn cfg() -> PreprocessConfig {
        PreprocessConfig::default()
    }

    #[test]
    fn empty_text_is_all_zero() {
        let v = extract_stylometric(&doc(""), &cfg());
        assert_eq!(v.values, [0.0; STYLO_DIM]);
    }

    #[test]
    fn basic_counts() {
        // "ভালো খবর!" in NFC: ভ া ল ো + space + খ ব র + '!' = 9 scalars.
        let v = extract_stylometric(&doc("ভালো খবর!"), &cfg());
        assert_eq!(v.values[0], 9.0);
        assert_eq!(v.values[1], 2.0);
        assert_eq!(v.values[5], 1.0);
        assert_eq!(v.values[8], 0.0);
        assert_eq!(v.values[9], 1.0);
        // The same text with ো spelled as the two-scalar sequence ে + া
        // has one character more.
        let decomposed = "ভাল\u{09C7}\u{09BE} খবর!";
        let v2 = extract_stylometric(&doc(decomposed), &cfg());
        assert_eq!(v2.values[0], 10.0);
    }

    #[test]
    fn sentence_counting() {
        let v = extract_stylometric(&doc("ভালো খবর! দল খারাপ।"), &cfg());
        assert_eq!(v.values[3], 2.0);
        assert_eq!(v.values[4], 2.0);
        assert_eq!(v.values[7], 1.0);
        // no terminal punctuation still counts one sentence
        let v = extract_stylometric(&doc("ভালো খবর"), &cfg());
        assert_eq!(v.values[3], 1.0);
    }

    #[test]
    fn elongation_and_bang_counts() {
        let v = extract_stylometric(&doc("ভালোওওও!!!"), &cfg());
        assert_eq!(v.values[8], 1.0);
        assert_eq!(v.values[5], 3.0);
        assert!(is_elongated("ভালোওওও"));
        assert!(!is_elongated("ভালোও"));
        assert!(!is_elongated(""));
    }

    #[test]
    fn digit_ratio_counts_both_scripts() {
        let v = extract_stylometric(&doc("৫5ক"), &cfg());
        assert!((v.values[10] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn stopword_ratio_measured_before_removal() {
        let config =
            PreprocessConfig::with_stopwords(["এই".to_string()].into_iter().collect()).unwrap();
        let v = extract_stylometric(&doc("এই খবর ভালো"), &config);
        assert!((v.values[11] - 1.0 / 3.0).abs() < 1e-15);
        // type-token ratio is computed after removal: 2 distinct of 2
        assert_eq!(v.values[9], 1.0);
    }

    #[test]
    fn extraction_is_pure() {
        let a = extract_stylometric(&doc("ভালো খবর! ১২৩"), &cfg());
        let b = extract_stylometric(&doc("ভালো খবর! ১২৩"), &cfg());
        assert_eq!(a.values, b.values);
    }

    fn stylo(values: [f64; STYLO_DIM]) -> StyloVector {
        StyloVector {
            values,
            origin_id: "t".into(),
        }
    }

    #[test]
    fn scaler_single_vector_passes_through_centered() {
        let v = stylo([3.0; STYLO_DIM]);
        let scaler = fit_scaler(std::slice::from_ref(&v)).unwrap();
        assert_eq!(scaler.stds(), [0.0; STYLO_DIM]);
        let out = scaler.transform(&v);
        assert!(out.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn scaler_two_point_mean_and_std() {
        let a = stylo([0.0; STYLO_DIM]);
        let b = stylo([2.0; STYLO_DIM]);
        let scaler = fit_scaler(&[a.clone(), b]).unwrap();
        assert!(scaler.means().iter().all(|&m| m == 1.0));
        assert!(scaler.stds().iter().all(|&s| s == 1.0));
        let out = scaler.transform(&a);
        assert!(out.iter().all(|&x| x == -1.0));
    }

    #[test]
    fn scaler_zero_std_component() {
        let mut v1 = [1.0; STYLO_DIM];
        let mut v2 = [3.0; STYLO_DIM];
        v1[4] = 5.0;
        v2[4] = 5.0;
        let scaler = fit_scaler(&[stylo(v1), stylo(v2)]).unwrap();
        let mut probe = [2.0; STYLO_DIM];
        probe[4] = 5.0;
        let out = scaler.transform(&stylo(probe));
        assert_eq!(out[4], 0.0);
        assert_eq!(out[0], 0.0); // (2-2)/1
    }

    #[test]
    fn empty_fit_is_an_error() {
        assert!(matches!(fit_scaler(&[]), Err(Error::EmptyFit)));
    }

    #[test]
    fn fit_transform_standardizes_training_set() {
        let vectors: Vec<StyloVector> = (0..7)
            .map(|k| {
                let mut vals = [0.0; STYLO_DIM];
                for (i, v) in vals.iter_mut().enumerate() {
                    *v = (k * (i + 1)) as f64 + (i as f64) * 0.5;
                }
                stylo(vals)
            })
            .collect();
        let scaler = fit_scaler(&vectors).unwrap();
        let transformed: Vec<Array1<f64>> = vectors.iter().map(|v| scaler.transform(v)).collect();
        for i in 0..STYLO_DIM {
            let mean: f64 = transformed.iter().map(|t| t[i]).sum::<f64>() / 7.0;
            let var: f64 = transformed
                .iter()
                .map(|t| (t[i] - mean).powi(2))
                .sum::<f64>()
                / 7.0;
            assert!(mean.abs() < 1e-9, "component {i} mean {mean}");
            if scaler.stds()[i] > 0.0 {
                assert!((var - 1.0).abs() < 1e-9, "component {i} var {var}");
            }
        }
    }
}
