//! Dictionary lookup over the corpus: standoff annotations, inline HTML
//! and keyword-in-context concordances.

mod html;

pub use html::{emit_index_html, emit_inline_html, ColorScheme};

use std::collections::HashMap;

use crate::preprocess::{slice_chars, Document, Span};
use crate::score::TermDictionary;

/// Standoff record: document, character offset, length, term id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    pub doc_id: String,
    pub start: usize,
    pub length: usize,
    pub term_id: u32,
}

impl Annotation {
    pub fn span(&self) -> Span {
        Span::new(self.start, self.start + self.length)
    }
}

/// A keyword-in-context line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcordanceLine {
    pub term_id: u32,
    pub doc_id: String,
    pub left: String,
    pub matched: String,
    pub right: String,
}

/// Match every dictionary variant over the document tokens,
/// case-insensitively, emitting all matches including nested and
/// overlapping ones. Matches never cross sentence boundaries.
pub fn match_phrases(doc: &Document, dictionary: &TermDictionary) -> Vec<Annotation> {
    // Variants grouped by their first token for cheap scanning.
    let mut by_first: HashMap<&str, Vec<(Vec<&str>, u32)>> = HashMap::new();
    for term in dictionary.terms() {
        for variant in &term.variants {
            let tokens: Vec<&str> = variant.split(' ').collect();
            if let Some(first) = tokens.first() {
                by_first.entry(first).or_default().push((tokens, term.term_id));
            }
        }
    }
    let mut annotations = Vec::new();
    for sentence in &doc.sentences {
        let lowered: Vec<String> =
            sentence.tokens.iter().map(|t| t.surface.to_lowercase()).collect();
        for start in 0..lowered.len() {
            let Some(candidates) = by_first.get(lowered[start].as_str()) else { continue };
            for (variant_tokens, term_id) in candidates {
                let end = start + variant_tokens.len();
                if end > lowered.len() {
                    continue;
                }
                if lowered[start..end].iter().map(String::as_str).eq(variant_tokens.iter().copied())
                {
                    let span = Span::new(
                        sentence.tokens[start].char_span.start,
                        sentence.tokens[end - 1].char_span.end,
                    );
                    annotations.push(Annotation {
                        doc_id: doc.id.clone(),
                        start: span.start,
                        length: span.len(),
                        term_id: *term_id,
                    });
                }
            }
        }
    }
    annotations.sort_by(sort_key);
    annotations.dedup();
    annotations
}

fn sort_key(a: &Annotation, b: &Annotation) -> std::cmp::Ordering {
    a.doc_id
        .cmp(&b.doc_id)
        .then_with(|| a.start.cmp(&b.start))
        .then_with(|| b.length.cmp(&a.length))
        .then_with(|| a.term_id.cmp(&b.term_id))
}

/// Standoff TSV: `doc_id<TAB>start<TAB>length<TAB>term_id`, sorted by
/// (doc, start, longest first).
pub fn emit_standoff(annotations: &[Annotation]) -> String {
    let mut sorted: Vec<&Annotation> = annotations.iter().collect();
    sorted.sort_by(|a, b| sort_key(a, b));
    let mut out = String::new();
    for a in sorted {
        out.push_str(&format!("{}\t{}\t{}\t{}\n", a.doc_id, a.start, a.length, a.term_id));
    }
    out
}

/// All concordance lines for one term, with up to `window` characters
/// of context on each side, clipped at document bounds.
pub fn concordances(
    term_id: u32,
    corpus: &[Document],
    annotations: &[Annotation],
    window: usize,
) -> Vec<ConcordanceLine> {
    let by_id: HashMap<&str, &Document> = corpus.iter().map(|d| (d.id.as_str(), d)).collect();
    let mut lines = Vec::new();
    let mut selected: Vec<&Annotation> =
        annotations.iter().filter(|a| a.term_id == term_id).collect();
    selected.sort_by(|a, b| sort_key(a, b));
    for ann in selected {
        let Some(doc) = by_id.get(ann.doc_id.as_str()) else { continue };
        let doc_len = doc.text.chars().count();
        let span = ann.span();
        let left_start = span.start.saturating_sub(window);
        let right_end = (span.end + window).min(doc_len);
        lines.push(ConcordanceLine {
            term_id,
            doc_id: ann.doc_id.clone(),
            left: slice_chars(&doc.text, Span::new(left_start, span.start)),
            matched: slice_chars(&doc.text, span),
            right: slice_chars(&doc.text, Span::new(span.end.min(doc_len), right_end)),
        });
    }
    lines
}

/// Concordance TSV: `term_id<TAB>doc_id<TAB>left<TAB>match<TAB>right`.
/// Tabs and newlines inside contexts become spaces.
pub fn emit_concordance_tsv(lines: &[ConcordanceLine]) -> String {
    let clean = |s: &str| s.replace(['\t', '\n', '\r'], " ");
    let mut out = String::new();
    for line in lines {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            line.term_id,
            line.doc_id,
            clean(&line.left),
            clean(&line.matched),
            clean(&line.right)
        ));
    }
    out
}
