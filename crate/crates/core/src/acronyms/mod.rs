//! Acronym recognition, disambiguation, integration and nested
//! expansion.
//!
//! Explicit acronyms are defined in text next to brackets and aligned
//! against a candidate long form to their left (or inside the brackets
//! for the reversed order). Implicit acronyms are detected purely by
//! shape and resolved against already-extracted candidates whose word
//! initials spell the short form, with verb-context cosine similarity
//! picking among multiple matches.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::extract::CandidateOccurrence;
use crate::normalize::{to_concept_key, ConceptKey, RetokenizationMap};
use crate::preprocess::{stem, Analyzer, CoarseTag, Document, Sentence, Span};
use crate::score::ConceptTable;

/// Which recognition method runs; set per corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcronymMode {
    Explicit,
    Implicit,
    Off,
}

/// How an acronym entered the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcronymKind {
    Explicit,
    Implicit,
}

/// One textual occurrence of a short form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcronymOccurrence {
    pub doc_id: String,
    pub sentence_index: usize,
    pub token_index: usize,
}

/// A resolved acronym bound to its long form.
#[derive(Debug, Clone)]
pub struct AcronymEntry {
    pub short_form: String,
    pub long_form_key: ConceptKey,
    /// Lowercase long-form phrase.
    pub long_form_surface: String,
    pub kind: AcronymKind,
    pub occurrences: Vec<AcronymOccurrence>,
    /// The defining span, when the long form was read off the text.
    pub long_form_occurrence: Option<CandidateOccurrence>,
}

/// An in-sentence bracket definition before resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitDefinition {
    pub short_form: String,
    pub doc_id: String,
    pub sentence_index: usize,
    /// Inclusive token range of the long form within its sentence.
    pub long_form_range: (usize, usize),
}

/// Longest candidate long form considered for a short form of `n`
/// alphanumeric characters.
fn max_long_form_words(sf_len: usize) -> usize {
    (sf_len + 5).min(2 * sf_len)
}

fn valid_short_form(surface: &str) -> bool {
    let n = surface.chars().count();
    (2..=10).contains(&n)
        && surface.chars().any(|c| c.is_alphabetic())
        && surface.chars().any(|c| c.is_uppercase())
        && surface.chars().next().is_some_and(|c| c.is_alphanumeric())
}

/// Right-to-left alignment of the short form against a token window,
/// following the bracket-definition heuristic: every character of the
/// short form must appear in order, and its first character must start
/// a word. Returns the index of the first long-form token.
fn align_long_form(short_form: &str, window: &[&str]) -> Option<usize> {
    let sf: Vec<char> = short_form.chars().filter(|c| c.is_alphanumeric()).flat_map(|c| c.to_lowercase()).collect();
    if sf.is_empty() {
        return None;
    }
    let text: Vec<char> = window.join(" ").to_lowercase().chars().collect();
    let mut s_index = sf.len() as isize - 1;
    let mut l_index = text.len() as isize - 1;
    while s_index >= 0 {
        let current = sf[s_index as usize];
        loop {
            if l_index < 0 {
                return None;
            }
            let li = l_index as usize;
            let mismatch = text[li] != current;
            let not_word_start =
                s_index == 0 && li > 0 && text[li - 1].is_alphanumeric();
            if mismatch || not_word_start {
                l_index -= 1;
            } else {
                break;
            }
        }
        l_index -= 1;
        s_index -= 1;
    }
    let start_char = (l_index + 1) as usize;
    Some(text[..start_char].iter().filter(|&&c| c == ' ').count())
}

fn is_bracket(surface: &str, open: bool) -> bool {
    if open {
        matches!(surface, "(" | "[")
    } else {
        matches!(surface, ")" | "]")
    }
}

/// Detect bracket acronym definitions in one document. Both orders are
/// recognized: `long form (SF)` and `SF (long form)`. The first
/// definition of a short form in the document wins.
pub fn find_explicit_acronyms(doc: &Document) -> Vec<ExplicitDefinition> {
    let mut defs: Vec<ExplicitDefinition> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for sentence in &doc.sentences {
        let tokens = &sentence.tokens;
        for (open_idx, token) in tokens.iter().enumerate() {
            if !is_bracket(&token.surface, true) {
                continue;
            }
            let Some(close_idx) = (open_idx + 1..tokens.len())
                .find(|&i| is_bracket(&tokens[i].surface, false))
            else {
                continue;
            };
            if close_idx == open_idx + 1 {
                continue;
            }
            let inside: Vec<&str> =
                tokens[open_idx + 1..close_idx].iter().map(|t| t.surface.as_str()).collect();

            let found = if inside.len() == 1 && valid_short_form(inside[0]) {
                // long form ( SF )
                let sf = inside[0];
                let window = window_before(tokens, open_idx, max_long_form_words(alnum_len(sf)));
                try_define(sf, &window, sentence, doc)
            } else if open_idx > 0 && valid_short_form(&tokens[open_idx - 1].surface) {
                // SF ( long form )
                let sf = tokens[open_idx - 1].surface.as_str();
                if inside.len() <= max_long_form_words(alnum_len(sf)) {
                    let window: Vec<(usize, &str)> =
                        (open_idx + 1..close_idx).map(|i| (i, tokens[i].surface.as_str())).collect();
                    try_define(sf, &window, sentence, doc)
                } else {
                    None
                }
            } else {
                None
            };

            if let Some(def) = found {
                if seen.insert(def.short_form.clone()) {
                    defs.push(def);
                }
            }
        }
    }
    defs
}

fn alnum_len(s: &str) -> usize {
    s.chars().filter(|c| c.is_alphanumeric()).count()
}

/// Tokens immediately left of `end`, newest first trimmed to
/// `max_words`, stopping at brackets and the sentence start.
fn window_before(tokens: &[crate::preprocess::Token], end: usize, max_words: usize) -> Vec<(usize, &str)> {
    let mut start = end;
    while start > 0
        && end - start < max_words
        && !is_bracket(&tokens[start - 1].surface, true)
        && !is_bracket(&tokens[start - 1].surface, false)
    {
        start -= 1;
    }
    (start..end).map(|i| (i, tokens[i].surface.as_str())).collect()
}

fn try_define(
    sf: &str,
    window: &[(usize, &str)],
    sentence: &Sentence,
    doc: &Document,
) -> Option<ExplicitDefinition> {
    let surfaces: Vec<&str> = window.iter().map(|(_, s)| *s).collect();
    let start_word = align_long_form(sf, &surfaces)?;
    accept_definition(sf, &window[start_word..], sentence, doc)
}

fn accept_definition(
    sf: &str,
    range: &[(usize, &str)],
    sentence: &Sentence,
    doc: &Document,
) -> Option<ExplicitDefinition> {
    if range.is_empty() {
        return None;
    }
    let long_chars: usize = range.iter().map(|(_, s)| s.chars().count()).sum();
    if long_chars <= sf.chars().count() {
        return None;
    }
    // The short form must not be one of the long form's own words.
    if range.iter().any(|(_, s)| s.eq_ignore_ascii_case(sf)) {
        return None;
    }
    Some(ExplicitDefinition {
        short_form: sf.to_string(),
        doc_id: doc.id.clone(),
        sentence_index: sentence.index,
        long_form_range: (range[0].0, range[range.len() - 1].0),
    })
}

/// Shape-based implicit short forms: three or more uppercase letters
/// only, excluding tokens bound by an explicit definition in the same
/// document. Returns occurrences grouped by surface.
pub fn find_implicit_acronym_tokens(
    corpus: &[Document],
    explicit_bound: &HashSet<(String, String)>,
) -> BTreeMap<String, Vec<AcronymOccurrence>> {
    let mut out: BTreeMap<String, Vec<AcronymOccurrence>> = BTreeMap::new();
    for doc in corpus {
        for sentence in &doc.sentences {
            for (i, token) in sentence.tokens.iter().enumerate() {
                let s = &token.surface;
                if s.chars().count() >= 3
                    && s.chars().all(|c| c.is_ascii_uppercase())
                    && !explicit_bound.contains(&(doc.id.clone(), s.clone()))
                {
                    out.entry(s.clone()).or_default().push(AcronymOccurrence {
                        doc_id: doc.id.clone(),
                        sentence_index: sentence.index,
                        token_index: i,
                    });
                }
            }
        }
    }
    out
}

/// Candidates whose post-retokenization token sequence has exactly one
/// word per short-form letter, with initials spelling the short form.
/// Returns `(key, variant phrase)` pairs, one per matching key.
pub fn match_initialisms(
    short_form: &str,
    table: &ConceptTable,
    retok: &RetokenizationMap,
) -> Vec<(ConceptKey, String)> {
    let letters: Vec<char> = short_form.chars().flat_map(|c| c.to_lowercase()).collect();
    let mut out: Vec<(ConceptKey, String)> = Vec::new();
    for entry in table.entries() {
        let mut best: Option<&String> = None;
        for variant in &entry.variants {
            let owned: Vec<String> = match retok.retokenize(variant) {
                Some(toks) => toks.to_vec(),
                None => variant.split(' ').map(|s| s.to_string()).collect(),
            };
            if owned.len() != letters.len() {
                continue;
            }
            let initials_match = owned
                .iter()
                .zip(&letters)
                .all(|(tok, &l)| tok.chars().next().and_then(|c| c.to_lowercase().next()) == Some(l));
            if initials_match {
                best = Some(best.map_or(variant, |b| b.min(variant)));
            }
        }
        if let Some(variant) = best {
            out.push((entry.key.clone(), variant.clone()));
        }
    }
    out
}

/// Verb lemma counts over a set of sentences.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerbContextVector {
    counts: BTreeMap<String, u64>,
}

impl VerbContextVector {
    pub fn counts(&self) -> &BTreeMap<String, u64> {
        &self.counts
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Collect verb lemmas from every sentence containing a listed
/// occurrence. Refs are `(doc_id, sentence_index)` pairs; duplicates
/// collapse to one sentence, distinct sentences add up.
pub fn verb_context_vector(refs: &[(String, usize)], corpus: &[Document]) -> VerbContextVector {
    let by_id: HashMap<&str, &Document> = corpus.iter().map(|d| (d.id.as_str(), d)).collect();
    let unique: BTreeSet<&(String, usize)> = refs.iter().collect();
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for (doc_id, sentence_index) in unique {
        let Some(doc) = by_id.get(doc_id.as_str()) else { continue };
        let Some(sentence) = doc.sentences.get(*sentence_index) else { continue };
        for token in &sentence.tokens {
            if token.tag.coarse == CoarseTag::Vb {
                *counts.entry(token.lemma.clone()).or_insert(0) += 1;
            }
        }
    }
    VerbContextVector { counts }
}

/// Cosine similarity of two verb-context vectors; 0 when either is
/// empty.
pub fn cosine(u: &VerbContextVector, v: &VerbContextVector) -> f64 {
    if u.is_empty() || v.is_empty() {
        return 0.0;
    }
    let dot: f64 = u
        .counts
        .iter()
        .filter_map(|(k, &a)| v.counts.get(k).map(|&b| a as f64 * b as f64))
        .sum();
    let norm = |x: &VerbContextVector| {
        x.counts.values().map(|&a| (a as f64).powi(2)).sum::<f64>().sqrt()
    };
    let denom = norm(u) * norm(v);
    if denom == 0.0 {
        0.0
    } else {
        dot / denom
    }
}

/// Pick the full form whose verb contexts are most similar to the
/// acronym's. Ties and all-zero similarities fall back to higher
/// candidate frequency, then lexicographic surface order.
pub fn disambiguate(
    short_form_refs: &[(String, usize)],
    candidates: &[(ConceptKey, String)],
    table: &ConceptTable,
    corpus: &[Document],
) -> (ConceptKey, String) {
    assert!(!candidates.is_empty(), "disambiguate needs at least one candidate");
    let acronym_vector = verb_context_vector(short_form_refs, corpus);
    let mut ranked: Vec<(f64, usize, &ConceptKey, &String)> = candidates
        .iter()
        .map(|(key, surface)| {
            let entry = table.get(key);
            let refs: Vec<(String, usize)> = entry
                .map(|e| {
                    e.occurrences
                        .iter()
                        .map(|o| (o.doc_id.clone(), o.sentence_index))
                        .collect()
                })
                .unwrap_or_default();
            let candidate_vector = verb_context_vector(&refs, corpus);
            let similarity = cosine(&acronym_vector, &candidate_vector);
            let frequency = entry.map_or(0, |e| e.frequency());
            (similarity, frequency, key, surface)
        })
        .collect();
    ranked.sort_by(|a, b| {
        b.0.partial_cmp(&a.0)
            .expect("cosine is finite")
            .then_with(|| b.1.cmp(&a.1))
            .then_with(|| a.3.cmp(b.3))
    });
    let best = &ranked[0];
    (best.2.clone(), best.3.clone())
}

/// Run the configured recognition method over the corpus and resolve
/// every short form to a long-form key.
pub fn resolve_acronyms(
    mode: AcronymMode,
    corpus: &[Document],
    table: &ConceptTable,
    retok: &RetokenizationMap,
    analyzer: &Analyzer,
) -> Vec<AcronymEntry> {
    match mode {
        AcronymMode::Off => Vec::new(),
        AcronymMode::Explicit => resolve_explicit(corpus, retok, analyzer),
        AcronymMode::Implicit => resolve_implicit(corpus, table, retok),
    }
}

fn resolve_explicit(
    corpus: &[Document],
    retok: &RetokenizationMap,
    analyzer: &Analyzer,
) -> Vec<AcronymEntry> {
    // First definition wins: per document, then corpus-wide in document
    // order for propagation into documents without their own definition.
    let all_defs: Vec<ExplicitDefinition> =
        corpus.iter().flat_map(find_explicit_acronyms).collect();
    let mut per_doc: HashMap<(&str, &str), usize> = HashMap::new();
    let mut global: HashMap<&str, usize> = HashMap::new();
    for (i, def) in all_defs.iter().enumerate() {
        per_doc.entry((def.doc_id.as_str(), def.short_form.as_str())).or_insert(i);
        global.entry(def.short_form.as_str()).or_insert(i);
    }

    let by_id: HashMap<&str, &Document> = corpus.iter().map(|d| (d.id.as_str(), d)).collect();
    let mut resolved: BTreeMap<usize, AcronymEntry> = BTreeMap::new();
    let mut unresolvable: HashSet<usize> = HashSet::new();

    // Bind every bare mention of a defined short form: the document's
    // own definition when it has one, otherwise the corpus-first one.
    for doc in corpus {
        for sentence in &doc.sentences {
            for (i, token) in sentence.tokens.iter().enumerate() {
                let sf = token.surface.as_str();
                let def_index = per_doc
                    .get(&(doc.id.as_str(), sf))
                    .or_else(|| global.get(sf))
                    .copied();
                let Some(def_index) = def_index else { continue };
                if unresolvable.contains(&def_index) {
                    continue;
                }
                if let std::collections::btree_map::Entry::Vacant(slot) =
                    resolved.entry(def_index)
                {
                    match resolve_definition(&all_defs[def_index], &by_id, retok, analyzer) {
                        Some(entry) => {
                            slot.insert(entry);
                        }
                        None => {
                            unresolvable.insert(def_index);
                            continue;
                        }
                    }
                }
                resolved.get_mut(&def_index).expect("just resolved").occurrences.push(
                    AcronymOccurrence {
                        doc_id: doc.id.clone(),
                        sentence_index: sentence.index,
                        token_index: i,
                    },
                );
            }
        }
    }
    resolved.into_values().collect()
}

fn resolve_definition(
    def: &ExplicitDefinition,
    by_id: &HashMap<&str, &Document>,
    retok: &RetokenizationMap,
    analyzer: &Analyzer,
) -> Option<AcronymEntry> {
    let doc = by_id[def.doc_id.as_str()];
    let sentence = &doc.sentences[def.sentence_index];
    let (first, last) = def.long_form_range;
    let tokens = &sentence.tokens[first..=last];
    let key = to_concept_key(tokens, retok, analyzer)?;
    let surface_joined = tokens.iter().map(|t| t.surface.as_str()).collect::<Vec<_>>().join(" ");
    let occurrence = CandidateOccurrence {
        doc_id: def.doc_id.clone(),
        sentence_index: def.sentence_index,
        token_range: (first, last),
        surface: surface_joined.clone(),
        char_span: Span::new(tokens[0].char_span.start, tokens[tokens.len() - 1].char_span.end),
    };
    Some(AcronymEntry {
        short_form: def.short_form.clone(),
        long_form_key: key,
        long_form_surface: surface_joined.to_lowercase(),
        kind: AcronymKind::Explicit,
        occurrences: Vec::new(),
        long_form_occurrence: Some(occurrence),
    })
}

fn resolve_implicit(
    corpus: &[Document],
    table: &ConceptTable,
    retok: &RetokenizationMap,
) -> Vec<AcronymEntry> {
    let detected = find_implicit_acronym_tokens(corpus, &HashSet::new());
    let mut entries = Vec::new();
    for (sf, occurrences) in detected {
        let candidates = match_initialisms(&sf, table, retok);
        if candidates.is_empty() {
            continue;
        }
        let refs: Vec<(String, usize)> =
            occurrences.iter().map(|o| (o.doc_id.clone(), o.sentence_index)).collect();
        let (key, surface) = disambiguate(&refs, &candidates, table, corpus);
        entries.push(AcronymEntry {
            short_form: sf,
            long_form_key: key,
            long_form_surface: surface,
            kind: AcronymKind::Implicit,
            occurrences,
            long_form_occurrence: None,
        });
    }
    entries
}

/// Add every acronym occurrence as an occurrence of its long form's
/// key; long forms that were never candidates are inserted from their
/// defining span. The acronym surface joins the variant set.
pub fn integrate_acronyms(table: &mut ConceptTable, entries: &[AcronymEntry], corpus: &[Document]) {
    let by_id: HashMap<&str, &Document> = corpus.iter().map(|d| (d.id.as_str(), d)).collect();
    for entry in entries {
        if table.get(&entry.long_form_key).is_none() {
            if let Some(defining) = &entry.long_form_occurrence {
                table.insert_occurrence(
                    entry.long_form_key.clone(),
                    entry.long_form_surface.clone(),
                    defining.clone(),
                );
            }
        }
        let variant = entry.short_form.to_lowercase();
        for occ in &entry.occurrences {
            let token = by_id
                .get(occ.doc_id.as_str())
                .and_then(|d| d.sentences.get(occ.sentence_index))
                .and_then(|s| s.tokens.get(occ.token_index));
            let Some(token) = token else { continue };
            table.insert_occurrence(
                entry.long_form_key.clone(),
                variant.clone(),
                CandidateOccurrence {
                    doc_id: occ.doc_id.clone(),
                    sentence_index: occ.sentence_index,
                    token_range: (occ.token_index, occ.token_index),
                    surface: token.surface.clone(),
                    char_span: token.char_span,
                },
            );
        }
    }
}

/// Expand acronyms nested inside other keys: every key containing a
/// resolved short form's stem has that element replaced by the union
/// with the long form's elements.
pub fn expand_nested(table: &mut ConceptTable, entries: &[AcronymEntry]) {
    let mut expansions: Vec<(String, ConceptKey)> = entries
        .iter()
        .map(|e| (stem(&e.short_form.to_lowercase()), e.long_form_key.clone()))
        .collect();
    expansions.sort_by(|a, b| a.0.cmp(&b.0));
    expansions.dedup_by(|a, b| a.0 == b.0);
    for (sf_stem, long_key) in &expansions {
        table.remap_keys(|key| {
            if key.contains(sf_stem) && key != long_key {
                key.expand_element(sf_stem, long_key)
            } else {
                key.clone()
            }
        });
    }
}
