//! Word tokenizer.
//!
//! Splits on whitespace, separates punctuation (including brackets),
//! breaks hyphenated words into their parts with the hyphen dropped as a
//! token boundary, and detaches possessive clitics ("Hodgkin's" becomes
//! "Hodgkin", "'s"). Spans are character offsets into the input.

use crate::preprocess::Span;

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Tokenize one sentence, returning surfaces with character spans
/// relative to `text`.
pub fn tokenize(text: &str) -> Vec<(String, Span)> {
    let chars: Vec<char> = text.chars().collect();
    let n = chars.len();
    let mut tokens = Vec::new();
    let mut i = 0;

    while i < n {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if is_apostrophe(c) && i + 1 < n && chars[i + 1].is_alphabetic() {
            // Clitic such as 's: the apostrophe plus the letter run.
            let start = i;
            i += 1;
            while i < n && chars[i].is_alphabetic() {
                i += 1;
            }
            tokens.push((chars[start..i].iter().collect(), Span::new(start, i)));
            continue;
        }
        if is_word_char(c) {
            let start = i;
            while i < n && is_word_char(chars[i]) {
                i += 1;
            }
            tokens.push((chars[start..i].iter().collect(), Span::new(start, i)));
            // A hyphen between word characters is a silent boundary.
            if i + 1 < n && chars[i] == '-' && is_word_char(chars[i + 1]) {
                i += 1;
            }
            continue;
        }
        // Any other character is a one-character punctuation token.
        tokens.push((c.to_string(), Span::new(i, i + 1)));
        i += 1;
    }
    tokens
}
