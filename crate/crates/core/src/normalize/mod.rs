//! Candidate normalization: tokenization-variant merging, stopword
//! removal, set-based concept keys and corpus-wide token normalization.

mod index;
mod similarity;

pub use index::{similar_candidates, within_filter_scope, SimilarityIndex};
pub use similarity::{jaro, jaro_winkler, SimilarityParams};

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::extract::CandidateOccurrence;
use crate::preprocess::{Analyzer, Token};
use crate::score::ConceptTable;

const STOPWORDS_DATA: &str = include_str!("../../data/stopwords.txt");

/// Lowercase stopword list, replaceable via a one-word-per-line file.
#[derive(Debug, Clone)]
pub struct Stopwords {
    words: HashSet<String>,
}

impl Stopwords {
    pub fn bundled() -> Self {
        Stopwords {
            words: STOPWORDS_DATA.lines().map(|w| w.trim().to_string()).filter(|w| !w.is_empty()).collect(),
        }
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let content =
            fs::read_to_string(path).map_err(|e| Error::Io { path: path.to_path_buf(), source: e })?;
        Ok(Stopwords {
            words: content.lines().map(|w| w.trim().to_string()).filter(|w| !w.is_empty()).collect(),
        })
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// The sorted, deduplicated set of stopword-free stems identifying one
/// latent concept. Equality is set equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConceptKey {
    elements: Vec<String>,
}

impl ConceptKey {
    /// Build a key from stems; returns None when nothing remains.
    pub fn new<I: IntoIterator<Item = String>>(stems: I) -> Option<Self> {
        let mut elements: Vec<String> = stems.into_iter().filter(|s| !s.is_empty()).collect();
        elements.sort();
        elements.dedup();
        if elements.is_empty() {
            None
        } else {
            Some(ConceptKey { elements })
        }
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, stem: &str) -> bool {
        self.elements.binary_search_by(|e| e.as_str().cmp(stem)).is_ok()
    }

    /// Proper subset test.
    pub fn is_proper_subset_of(&self, other: &ConceptKey) -> bool {
        self.len() < other.len() && self.elements.iter().all(|e| other.contains(e))
    }

    /// Rewrite elements through `replacements`, re-canonicalizing.
    pub fn map_elements(&self, replacements: &HashMap<String, String>) -> ConceptKey {
        ConceptKey::new(
            self.elements
                .iter()
                .map(|e| replacements.get(e).cloned().unwrap_or_else(|| e.clone())),
        )
        .expect("mapped key keeps at least one element")
    }

    /// Replace `element` by the elements of `expansion`.
    pub fn expand_element(&self, element: &str, expansion: &ConceptKey) -> ConceptKey {
        ConceptKey::new(
            self.elements
                .iter()
                .filter(|e| e.as_str() != element)
                .cloned()
                .chain(expansion.elements.iter().cloned()),
        )
        .expect("expansion keeps at least one element")
    }
}

impl fmt::Display for ConceptKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.elements.join(", "))
    }
}

/// Phrase-level retokenization decisions: maps a lowercase phrase onto
/// the token list of a more finely tokenized variant.
#[derive(Debug, Clone, Default)]
pub struct RetokenizationMap {
    map: HashMap<String, Vec<String>>,
}

impl RetokenizationMap {
    pub fn retokenize(&self, phrase: &str) -> Option<&[String]> {
        self.map.get(phrase).map(|v| v.as_slice())
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Vec<String>)> {
        self.map.iter()
    }
}

/// Lowercase token list of a candidate phrase.
pub fn phrase_tokens(occurrence: &CandidateOccurrence) -> Vec<String> {
    occurrence.surface.split(' ').map(|t| t.to_lowercase()).collect()
}

/// Merge tokenization variants across candidate phrases.
///
/// Phrases whose whitespace-stripped concatenations reach the phrase
/// similarity threshold are grouped (transitively); each phrase with
/// fewer tokens than its group's representative is mapped onto the
/// representative's token list.
pub fn merge_tokenization_variants(
    candidates: &[CandidateOccurrence],
    params: &SimilarityParams,
) -> RetokenizationMap {
    let mut phrases: Vec<Vec<String>> = candidates.iter().map(phrase_tokens).collect();
    phrases.sort();
    phrases.dedup();
    merge_phrase_tokenizations(phrases, params)
}

pub(crate) fn merge_phrase_tokenizations(
    phrases: Vec<Vec<String>>,
    params: &SimilarityParams,
) -> RetokenizationMap {
    let stripped: Vec<String> = phrases.iter().map(|p| p.concat()).collect();
    let mut uf = UnionFind::new(phrases.len());

    // Identical stripped concatenations are the same phrase modulo
    // tokenization; group them without any similarity computation.
    let mut by_stripped: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, s) in stripped.iter().enumerate() {
        by_stripped.entry(s.as_str()).or_default().push(i);
    }
    for group in by_stripped.values() {
        for w in group.windows(2) {
            uf.union(w[0], w[1]);
        }
    }

    let index = SimilarityIndex::build(stripped.iter().cloned());
    for (i, s) in stripped.iter().enumerate() {
        for candidate in similar_candidates(&index, s) {
            if jaro_winkler(s, candidate, params) >= params.phrase_threshold {
                for &j in &by_stripped[candidate.as_str()] {
                    uf.union(i, j);
                }
            }
        }
    }

    // Within each group the most finely tokenized phrase re-tokenizes the
    // rest; ties keep phrases as they are.
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..phrases.len() {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    let mut map = HashMap::new();
    for members in groups.values() {
        if members.len() < 2 {
            continue;
        }
        let rep = *members
            .iter()
            .max_by(|&&a, &&b| {
                phrases[a]
                    .len()
                    .cmp(&phrases[b].len())
                    .then_with(|| phrases[b].cmp(&phrases[a]))
            })
            .expect("non-empty group");
        for &i in members {
            if phrases[i].len() < phrases[rep].len() {
                map.insert(phrases[i].join(" "), phrases[rep].clone());
            }
        }
    }
    RetokenizationMap { map }
}

/// Set-based key of one candidate occurrence: apply retokenization, drop
/// stopwords and pure-punctuation tokens, collect stems, sort, dedupe.
/// Returns None (with a logged warning) when every token is removed.
pub fn to_concept_key(
    tokens: &[Token],
    retok: &RetokenizationMap,
    analyzer: &Analyzer,
) -> Option<ConceptKey> {
    let phrase: String = tokens
        .iter()
        .map(|t| t.surface.to_lowercase())
        .collect::<Vec<_>>()
        .join(" ");
    let key = match retok.retokenize(&phrase) {
        Some(new_tokens) => ConceptKey::new(new_tokens.iter().filter_map(|tok| {
            if !tok.chars().any(|c| c.is_alphanumeric()) {
                return None;
            }
            let (lemma, stem) = analyzer.analyze_word(tok);
            if analyzer.is_stopword(tok, &lemma) {
                None
            } else {
                Some(stem)
            }
        })),
        None => ConceptKey::new(tokens.iter().filter_map(|t| {
            if t.is_stopword || !t.surface.chars().any(|c| c.is_alphanumeric()) {
                None
            } else {
                Some(t.stem.clone())
            }
        })),
    };
    if key.is_none() {
        log::warn!("candidate {phrase:?} reduced to an empty key; occurrence discarded");
    }
    key
}

/// Corpus-wide token normalization: among mutually similar key elements
/// the shortest replaces the others, keys are re-canonicalized and
/// colliding entries merge. Returns the element replacement map.
pub fn normalize_tokens(table: &mut ConceptTable, params: &SimilarityParams) -> HashMap<String, String> {
    let mut vocab: Vec<String> = table
        .entries()
        .flat_map(|e| e.key.elements().iter().cloned())
        .collect();
    vocab.sort();
    vocab.dedup();

    let index = SimilarityIndex::build(vocab.iter().cloned());
    let pos: HashMap<&str, usize> =
        vocab.iter().enumerate().map(|(i, w)| (w.as_str(), i)).collect();
    let mut uf = UnionFind::new(vocab.len());
    for (i, word) in vocab.iter().enumerate() {
        for candidate in similar_candidates(&index, word) {
            if jaro_winkler(word, candidate, params) >= params.token_threshold {
                uf.union(i, pos[candidate.as_str()]);
            }
        }
    }

    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..vocab.len() {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    let mut replacements = HashMap::new();
    for members in groups.values() {
        if members.len() < 2 {
            continue;
        }
        let rep = *members
            .iter()
            .min_by(|&&a, &&b| {
                let (wa, wb) = (&vocab[a], &vocab[b]);
                wa.chars()
                    .count()
                    .cmp(&wb.chars().count())
                    .then_with(|| wa.cmp(wb))
            })
            .expect("non-empty group");
        for &i in members {
            if i != rep {
                replacements.insert(vocab[i].clone(), vocab[rep].clone());
            }
        }
    }

    if !replacements.is_empty() {
        table.remap_keys(|key| key.map_elements(&replacements));
    }
    replacements
}

/// Disjoint-set forest used for transitive merge grouping.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Deterministic orientation: smaller index wins.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
