//! Candidate extraction: matching the tag pattern over each sentence.

mod dfa;
pub mod pattern;

pub use dfa::Dfa;
pub use pattern::PatternAst;

use crate::error::Result;
use crate::preprocess::{CoarseTag, Document, Sentence, Span};

/// The default extraction pattern: noun phrases, optionally joined by a
/// preposition or a possessive marker.
pub const DEFAULT_PATTERN: &str =
    "(((NN|JJ)* NN) IN ((NN|JJ)* NN)) | ((NN|JJ)* NN POS (NN|JJ)* NN) | ((NN|JJ)+ NN)";

/// A compiled tag pattern; immutable and shareable across threads.
#[derive(Debug, Clone)]
pub struct TagPattern {
    source: String,
    dfa: Dfa,
}

impl TagPattern {
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn state_count(&self) -> usize {
        self.dfa.state_count()
    }

    /// Whether the pattern accepts exactly this tag word.
    pub fn accepts(&self, tags: &[CoarseTag]) -> bool {
        self.dfa.accepts(tags)
    }

    /// Leftmost-longest non-overlapping match ranges over a tag sequence.
    pub fn find_matches(&self, tags: &[CoarseTag]) -> Vec<(usize, usize)> {
        self.dfa.leftmost_longest(tags)
    }
}

/// Compile a pattern source into a deterministic automaton.
pub fn compile_pattern(source: &str) -> Result<TagPattern> {
    let ast = pattern::parse(source)?;
    Ok(TagPattern { source: source.to_string(), dfa: Dfa::from_ast(&ast) })
}

/// A matched phrase span tied to document and sentence positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateOccurrence {
    pub doc_id: String,
    pub sentence_index: usize,
    /// Inclusive (first, last) token indices within the sentence.
    pub token_range: (usize, usize),
    /// Token surfaces joined by single spaces.
    pub surface: String,
    /// Character span in document coordinates.
    pub char_span: Span,
}

/// Extract the pattern's matches from one sentence.
pub fn extract_candidates(
    doc: &Document,
    sentence: &Sentence,
    pattern: &TagPattern,
) -> Vec<CandidateOccurrence> {
    let tags: Vec<CoarseTag> = sentence.tokens.iter().map(|t| t.tag.coarse).collect();
    pattern
        .find_matches(&tags)
        .into_iter()
        .map(|(start, end)| {
            let tokens = &sentence.tokens[start..end];
            let surface: Vec<&str> = tokens.iter().map(|t| t.surface.as_str()).collect();
            CandidateOccurrence {
                doc_id: doc.id.clone(),
                sentence_index: sentence.index,
                token_range: (start, end - 1),
                surface: surface.join(" "),
                char_span: Span::new(tokens[0].char_span.start, tokens[end - start - 1].char_span.end),
            }
        })
        .collect()
}

/// Extract candidates from every sentence of every document.
pub fn extract_corpus(docs: &[Document], pattern: &TagPattern) -> Vec<CandidateOccurrence> {
    let mut out = Vec::new();
    for doc in docs {
        for sentence in &doc.sentences {
            out.extend(extract_candidates(doc, sentence, pattern));
        }
    }
    out
}
