//! Walk one mixed-script sentence through each preprocessing stage:
//! script filtering, tokenization, and stopword removal.
//!
//! ```bash
//! cargo run -p ideo --example preprocess_text
//! ```

use std::collections::BTreeSet;

use ideo::preprocess::{
    filter_script, load_stopwords, preprocess_text, remove_stopwords, tokenize, PreprocessConfig,
    BANGLA_BLOCK,
};

fn main() -> ideo::Result<()> {
    let raw = "আমি আজ খুউউব খুশি!!! Feeling great 😀 #blessed ১২৩ দেখুন: https://example.com";
    println!("raw text:\n  {raw}\n");

    // Stage 1: everything outside the retained script ranges becomes a
    // space. Bangla digits are inside the block and survive; Latin
    // letters, emoji, and URLs do not.
    let config = PreprocessConfig::default();
    let filtered = filter_script(raw, &config);
    println!("after script filtering (Bangla block U+0980..U+09FF):\n  {filtered}\n");

    // Stage 2: split on whitespace.
    let tokens = tokenize(&filtered);
    println!("tokens: {tokens:?}\n");

    // Stage 3: drop stopwords by exact match.
    let stopwords: BTreeSet<String> = load_stopwords(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/stopwords_bn.txt"
    ))?;
    println!("loaded {} stopwords", stopwords.len());
    let config = PreprocessConfig::new(vec![BANGLA_BLOCK], stopwords)?;
    let kept = remove_stopwords(tokens, &config);
    println!("after stopword removal: {kept:?}\n");

    // preprocess_text runs all three stages in one call.
    let direct = preprocess_text(raw, &config);
    assert_eq!(direct, kept);
    println!("preprocess_text(raw) gives the same result: {direct:?}");
    Ok(())
}
