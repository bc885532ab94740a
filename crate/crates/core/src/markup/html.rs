//! Inline HTML visualization with seeded random coloring, plus the
//! navigation index page.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::preprocess::{slice_chars, Document, Span};
use crate::score::TermDictionary;

use super::{Annotation, ConcordanceLine};

/// 32 visually distinct highlight backgrounds.
const PALETTE: [&str; 32] = [
    "#cceaab", "#f9d5e5", "#aee1f9", "#ffe9a8", "#d9c7f2", "#c6f2e0", "#f8c8a8", "#cfe0fc",
    "#f5b8c4", "#d3f8b6", "#b8ecf5", "#fcd9b8", "#e0c9f8", "#c8f5c8", "#f5e3b8", "#c9d8f8",
    "#f8c9e0", "#d8f5b8", "#b8d8f5", "#f5d8c9", "#e3f8c9", "#c9f8e3", "#f8e3c9", "#d8c9f5",
    "#c9f5d8", "#f5c9d8", "#e3c9f8", "#c8e8f8", "#f8f5c9", "#d9f2c7", "#f2c7d9", "#c7d9f2",
];

/// Seeded shuffle of the palette, indexed by term rank: the same term
/// id always gets the same color, distinct ids get distinct colors up
/// to the palette size.
#[derive(Debug, Clone)]
pub struct ColorScheme {
    colors: Vec<&'static str>,
}

impl ColorScheme {
    pub fn seeded(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut colors: Vec<&'static str> = PALETTE.to_vec();
        // Fisher-Yates driven by the seeded stream.
        for i in (1..colors.len()).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            colors.swap(i, j);
        }
        ColorScheme { colors }
    }

    pub fn color_for(&self, term_id: u32) -> &'static str {
        let rank = term_id.saturating_sub(1) as usize;
        self.colors[rank % self.colors.len()]
    }
}

pub fn escape_html(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            _ => out.push(c),
        }
    }
    out
}

/// Resolve overlapping annotations to the longest match (ties: earliest
/// start, then smallest id) and return the kept set sorted by start.
fn resolve_overlaps(annotations: &[Annotation]) -> Vec<&Annotation> {
    let mut by_length: Vec<&Annotation> = annotations.iter().collect();
    by_length.sort_by(|a, b| {
        b.length
            .cmp(&a.length)
            .then_with(|| a.start.cmp(&b.start))
            .then_with(|| a.term_id.cmp(&b.term_id))
    });
    let mut kept: Vec<&Annotation> = Vec::new();
    for candidate in by_length {
        let overlaps = kept.iter().any(|k| {
            candidate.start < k.start + k.length && k.start < candidate.start + candidate.length
        });
        if !overlaps {
            kept.push(candidate);
        }
    }
    kept.sort_by_key(|a| a.start);
    kept
}

/// Render one document as highlighted HTML. Only the longest matches
/// are marked; each kept span becomes a `mark` element carrying the
/// term id, with the id also rendered after the phrase.
pub fn emit_inline_html(doc: &Document, annotations: &[Annotation], colors: &ColorScheme) -> String {
    let kept = resolve_overlaps(annotations);
    let doc_len = doc.text.chars().count();
    let mut body = String::new();
    let mut cursor = 0usize;
    for ann in kept {
        let span = ann.span();
        if span.start < cursor || span.end > doc_len {
            continue;
        }
        body.push_str(&escape_html(&slice_chars(&doc.text, Span::new(cursor, span.start))));
        body.push_str(&format!(
            "<mark id=\"{id}\" class=\"entity\" style=\"background: {color};\">{text}<sup class=\"tid\">{id}</sup></mark>",
            id = ann.term_id,
            color = colors.color_for(ann.term_id),
            text = escape_html(&slice_chars(&doc.text, span)),
        ));
        cursor = span.end;
    }
    body.push_str(&escape_html(&slice_chars(&doc.text, Span::new(cursor, doc_len))));

    format!(
        "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>{id}</title>\n\
         <style>\nbody {{ font-family: sans-serif; margin: 2em; }}\n\
         .doc {{ white-space: pre-wrap; line-height: 1.8; }}\n\
         sup.tid {{ font-size: 0.7em; }}\n</style>\n</head>\n<body>\n\
         <p><a href=\"index.html\">index</a></p>\n<h1>{id}</h1>\n<div class=\"doc\">{body}</div>\n\
         </body>\n</html>\n",
        id = escape_html(&doc.id),
        body = body,
    )
}

/// The navigation page: terms ranked by score, each linking to its
/// concordance section; every concordance line links to its annotated
/// document.
pub fn emit_index_html(
    dictionary: &TermDictionary,
    concordance_lines: &[ConcordanceLine],
    colors: &ColorScheme,
) -> String {
    let mut out = String::from(
        "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>Recognized terms</title>\n\
         <style>\nbody { font-family: sans-serif; margin: 2em; }\n\
         table { border-collapse: collapse; }\ntd, th { padding: 0.2em 0.8em; text-align: left; }\n\
         .kwic td.m { text-align: center; }\n.kwic td.l { text-align: right; color: #555; }\n\
         .kwic td.r { color: #555; }\n</style>\n</head>\n<body>\n<h1>Recognized terms</h1>\n",
    );
    out.push_str("<table>\n<tr><th>rank</th><th>score</th><th>variants</th></tr>\n");
    for term in dictionary.terms() {
        out.push_str(&format!(
            "<tr><td><a href=\"#term-{id}\">{id}</a></td><td>{score:.4}</td><td><span style=\"background: {color};\">{variants}</span></td></tr>\n",
            id = term.term_id,
            score = term.score,
            color = colors.color_for(term.term_id),
            variants = escape_html(&term.variants.join(" | ")),
        ));
    }
    out.push_str("</table>\n");
    for term in dictionary.terms() {
        out.push_str(&format!(
            "<h2 id=\"term-{id}\">{id}. {variants}</h2>\n<table class=\"kwic\">\n",
            id = term.term_id,
            variants = escape_html(&term.variants.join(" | ")),
        ));
        for line in concordance_lines.iter().filter(|l| l.term_id == term.term_id) {
            out.push_str(&format!(
                "<tr><td class=\"l\">{left}</td><td class=\"m\"><a href=\"{doc}.html\"><span style=\"background: {color};\">{m}</span></a></td><td class=\"r\">{right}</td></tr>\n",
                left = escape_html(&line.left),
                doc = escape_html(&line.doc_id),
                color = colors.color_for(term.term_id),
                m = escape_html(&line.matched),
                right = escape_html(&line.right),
            ));
        }
        out.push_str("</table>\n");
    }
    out.push_str("</body>\n</html>\n");
    out
}
