//! Seed-fixed synthetic corpora for experiments and end-to-end checks.
//!
//! The generator builds a two-class corpus whose classes differ along every
//! axis the feature extractors look at: disjoint token vocabularies (so
//! TF-IDF and embeddings separate them), different document lengths and
//! different punctuation habits (so stylometric features separate them
//! too). All randomness comes from one SplitMix64 stream, so a given spec
//! always yields the same corpus.

use crate::corpus::{Corpus, Document};
use crate::rng::SplitMix64;

/// Parameters of the two-topic corpus.
#[derive(Debug, Clone)]
pub struct TwoTopicSpec {
    pub docs_per_class: usize,
    /// Distinct tokens available to each class.
    pub vocab_per_class: usize,
    /// Token-count range (inclusive) for class 0 ("neutral").
    pub neutral_len: (usize, usize),
    /// Token-count range (inclusive) for class 1 ("political").
    pub political_len: (usize, usize),
    pub seed: u64,
}

impl Default for TwoTopicSpec {
    fn default() -> Self {
        TwoTopicSpec {
            docs_per_class: 200,
            vocab_per_class: 50,
            neutral_len: (5, 20),
            political_len: (25, 40),
            seed: 0x1DE0,
        }
    }
}

const CONSONANTS: [char; 20] = [
    'ক', 'খ', 'গ', 'ঘ', 'চ', 'ছ', 'জ', 'ঝ', 'ট', 'ঠ', 'ড', 'ত', 'থ', 'দ', 'ধ', 'ন', 'প', 'ব', 'ম',
    'র',
];
const VOWEL_SIGNS: [char; 7] = ['া', 'ি', 'ী', 'ু', 'ে', 'ো', 'ৌ'];

/// Deterministic enumeration of distinct two-syllable Bangla-script tokens.
fn nth_token(n: usize) -> String {
    let v = VOWEL_SIGNS.len();
    let c = CONSONANTS.len();
    let first = n % c;
    let second = (n / c) % c;
    let sign_a = (n / (c * c)) % v;
    let sign_b = (n / (c * c * v)) % v;
    let mut s = String::new();
    s.push(CONSONANTS[first]);
    s.push(VOWEL_SIGNS[sign_a]);
    s.push(CONSONANTS[second]);
    s.push(VOWEL_SIGNS[sign_b]);
    s
}

/// The two disjoint vocabularies used by [`two_topic_corpus`].
pub fn topic_vocabularies(spec: &TwoTopicSpec) -> (Vec<String>, Vec<String>) {
    let neutral = (0..spec.vocab_per_class).map(nth_token).collect();
    let political = (spec.vocab_per_class..2 * spec.vocab_per_class)
        .map(nth_token)
        .collect();
    (neutral, political)
}

/// Generate the two-topic corpus. Classes alternate in document order;
/// class names are `["neutral", "political"]` (already sorted, matching
/// the label mapping a CSV round trip would produce).
pub fn two_topic_corpus(spec: &TwoTopicSpec) -> Corpus {
    let (neutral_vocab, political_vocab) = topic_vocabularies(spec);
    let mut rng = SplitMix64::new(spec.seed);
    let mut documents = Vec::with_capacity(2 * spec.docs_per_class);

    for k in 0..2 * spec.docs_per_class {
        let label = k % 2;
        let (vocab, len_range, terminator) = if label == 0 {
            (&neutral_vocab, spec.neutral_len, "।")
        } else {
            (&political_vocab, spec.political_len, "!")
        };
        let span = (len_range.1 - len_range.0 + 1) as u64;
        let len = len_range.0 + rng.next_below(span) as usize;

        let mut text = String::new();
        for pos in 0..len {
            if pos > 0 {
                text.push(' ');
            }
            let word = &vocab[rng.next_below(vocab.len() as u64) as usize];
            text.push_str(word);
            // Sentence boundary roughly every 8 tokens, plus one at the end.
            if pos % 8 == 7 || pos == len - 1 {
                text.push_str(terminator);
                if label == 1 && rng.next_below(3) == 0 {
                    text.push_str("!!");
                }
            }
        }
        documents.push(Document {
            id: format!("row-{k}"),
            text,
            label,
        });
    }

    Corpus::from_documents(
        documents,
        vec!["neutral".to_string(), "political".to_string()],
        format!("synthetic:two-topic:seed={}", spec.seed),
    )
    .expect("labels are valid by construction")
}
