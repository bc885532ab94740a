//! Rule-based sentence splitter.
//!
//! A boundary is placed after sentence-final punctuation (. ! ?),
//! optionally followed by closing quotes or brackets, when the next
//! non-whitespace character is an uppercase letter or a digit. A guard
//! list keeps common abbreviations from ending a sentence.

use crate::preprocess::Span;

const ABBREVIATIONS: &[&str] = &[
    "al", "approx", "ca", "cf", "dr", "e.g", "eq", "et", "etc", "fig", "i.e", "jr", "mr", "mrs",
    "ms", "no", "prof", "sr", "st", "vs",
];

fn is_closer(c: char) -> bool {
    matches!(c, ')' | ']' | '"' | '\'' | '\u{2019}')
}

/// Split `text` into sentence spans (character offsets). Spans cover all
/// non-whitespace text and exclude surrounding whitespace.
pub fn split_sentences(text: &str) -> Vec<Span> {
    let chars: Vec<char> = text.chars().collect();
    let n = chars.len();
    let mut spans = Vec::new();

    let mut start = next_non_ws(&chars, 0);
    let mut i = start;
    while i < n {
        let c = chars[i];
        if matches!(c, '.' | '!' | '?') && !guarded(&chars, i) {
            let mut end = i + 1;
            while end < n && is_closer(chars[end]) {
                end += 1;
            }
            let after = next_non_ws(&chars, end);
            let boundary = end < n
                && chars[end].is_whitespace()
                && after < n
                && (chars[after].is_uppercase() || chars[after].is_ascii_digit());
            if boundary {
                spans.push(Span::new(start, end));
                start = after;
                i = after;
                continue;
            }
        }
        i += 1;
    }
    // Trailing material forms the last sentence.
    let last_end = last_non_ws_end(&chars, start);
    if last_end > start {
        spans.push(Span::new(start, last_end));
    }
    spans
}

fn next_non_ws(chars: &[char], mut i: usize) -> usize {
    while i < chars.len() && chars[i].is_whitespace() {
        i += 1;
    }
    i
}

fn last_non_ws_end(chars: &[char], from: usize) -> usize {
    let mut end = chars.len();
    while end > from && chars[end - 1].is_whitespace() {
        end -= 1;
    }
    end
}

/// True when the period at `i` terminates a guarded abbreviation or a
/// single uppercase initial.
fn guarded(chars: &[char], i: usize) -> bool {
    if chars[i] != '.' {
        return false;
    }
    let mut start = i;
    while start > 0 {
        let c = chars[start - 1];
        if c.is_alphanumeric() || c == '.' || c == '-' {
            start -= 1;
        } else {
            break;
        }
    }
    if start == i {
        return false;
    }
    let word: String = chars[start..i].iter().collect();
    if word.chars().count() == 1 && word.chars().next().is_some_and(|c| c.is_uppercase()) {
        return true;
    }
    ABBREVIATIONS.contains(&word.to_lowercase().as_str())
}
