//! Concept table, nested-occurrence sets, C-value scoring and term
//! dictionary construction.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::extract::CandidateOccurrence;
use crate::normalize::ConceptKey;

/// A concept's variants, occurrences, nest set and score.
#[derive(Debug, Clone)]
pub struct ConceptEntry {
    pub key: ConceptKey,
    /// Lowercase phrase variants observed for this key.
    pub variants: BTreeSet<String>,
    pub occurrences: Vec<CandidateOccurrence>,
    /// Keys this key is a proper subset of.
    pub nest_parents: BTreeSet<ConceptKey>,
    pub score: f64,
    pub term_id: Option<u32>,
}

impl ConceptEntry {
    fn new(key: ConceptKey) -> Self {
        ConceptEntry {
            key,
            variants: BTreeSet::new(),
            occurrences: Vec::new(),
            nest_parents: BTreeSet::new(),
            score: 0.0,
            term_id: None,
        }
    }

    /// Occurrence count of this exact key.
    pub fn frequency(&self) -> usize {
        self.occurrences.len()
    }
}

/// All concept entries, keyed by their normalized set representation.
#[derive(Debug, Clone, Default)]
pub struct ConceptTable {
    entries: BTreeMap<ConceptKey, ConceptEntry>,
}

impl ConceptTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &ConceptKey) -> Option<&ConceptEntry> {
        self.entries.get(key)
    }

    pub fn entries(&self) -> impl Iterator<Item = &ConceptEntry> {
        self.entries.values()
    }

    pub fn entries_mut(&mut self) -> impl Iterator<Item = &mut ConceptEntry> {
        self.entries.values_mut()
    }

    pub fn keys(&self) -> impl Iterator<Item = &ConceptKey> {
        self.entries.keys()
    }

    /// Record one occurrence of `key` under the given variant phrase.
    pub fn insert_occurrence(&mut self, key: ConceptKey, variant: String, occ: CandidateOccurrence) {
        let entry = self.entries.entry(key.clone()).or_insert_with(|| ConceptEntry::new(key));
        entry.variants.insert(variant);
        entry.occurrences.push(occ);
    }

    /// Rewrite every key through `f`, merging entries whose rewritten
    /// keys collide. Nest sets are invalidated and cleared.
    pub fn remap_keys<F: Fn(&ConceptKey) -> ConceptKey>(&mut self, f: F) {
        let old = std::mem::take(&mut self.entries);
        for (_, mut entry) in old {
            let new_key = f(&entry.key);
            match self.entries.get_mut(&new_key) {
                Some(existing) => {
                    existing.variants.append(&mut entry.variants);
                    existing.occurrences.append(&mut entry.occurrences);
                }
                None => {
                    entry.key = new_key.clone();
                    entry.nest_parents.clear();
                    self.entries.insert(new_key, entry);
                }
            }
        }
    }
}

/// Fill `nest_parents` for every entry: all other keys each key is a
/// proper subset of. Candidate supersets come from an inverted index
/// from stem to containing keys, so only keys sharing an element are
/// examined.
pub fn build_nest_sets(table: &mut ConceptTable) {
    let keys: Vec<ConceptKey> = table.keys().cloned().collect();
    let mut postings: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, key) in keys.iter().enumerate() {
        for stem in key.elements() {
            postings.entry(stem.as_str()).or_default().push(i);
        }
    }
    let mut parents: Vec<BTreeSet<ConceptKey>> = vec![BTreeSet::new(); keys.len()];
    for (i, key) in keys.iter().enumerate() {
        // The shortest posting list among this key's elements bounds the
        // candidate set; every superset must appear in all of them.
        let shortest = key
            .elements()
            .iter()
            .filter_map(|stem| postings.get(stem.as_str()))
            .min_by_key(|list| list.len());
        let Some(candidates) = shortest else { continue };
        for &j in candidates {
            if j != i && key.is_proper_subset_of(&keys[j]) {
                parents[i].insert(keys[j].clone());
            }
        }
    }
    for (key, parent_set) in keys.into_iter().zip(parents) {
        if let Some(entry) = table.entries.get_mut(&key) {
            entry.nest_parents = parent_set;
        }
    }
}

/// C-value of one entry: ln|α| · (f(α) − mean frequency over the nest
/// set), or ln|α| · f(α) when nothing contains the key. Singleton keys
/// score zero.
pub fn c_value(entry: &ConceptEntry, table: &ConceptTable) -> f64 {
    let length_weight = (entry.key.len() as f64).ln();
    let f = entry.frequency() as f64;
    if entry.nest_parents.is_empty() {
        return length_weight * f;
    }
    let nested_sum: f64 = entry
        .nest_parents
        .iter()
        .map(|parent| table.get(parent).map_or(0.0, |p| p.frequency() as f64))
        .sum();
    length_weight * (f - nested_sum / entry.nest_parents.len() as f64)
}

/// Per-stem document frequencies over candidate occurrences.
#[derive(Debug, Clone)]
pub struct DocFrequencies {
    df: HashMap<String, usize>,
    doc_count: usize,
}

impl DocFrequencies {
    pub fn from_table(table: &ConceptTable, doc_count: usize) -> Self {
        let mut docs_per_stem: HashMap<String, HashSet<String>> = HashMap::new();
        for entry in table.entries() {
            for stem in entry.key.elements() {
                let docs = docs_per_stem.entry(stem.clone()).or_default();
                for occ in &entry.occurrences {
                    docs.insert(occ.doc_id.clone());
                }
            }
        }
        DocFrequencies {
            df: docs_per_stem.into_iter().map(|(s, d)| (s, d.len())).collect(),
            doc_count,
        }
    }

    pub fn df(&self, stem: &str) -> usize {
        self.df.get(stem).copied().unwrap_or(0)
    }

    pub fn doc_count(&self) -> usize {
        self.doc_count
    }
}

/// Inverse-document-frequency factor of a key: the mean of ln(N/df(t))
/// over its elements.
pub fn idf_factor(key: &ConceptKey, dfs: &DocFrequencies) -> f64 {
    let n = dfs.doc_count() as f64;
    let sum: f64 = key
        .elements()
        .iter()
        .map(|stem| {
            let df = dfs.df(stem).max(1) as f64;
            (n / df).ln()
        })
        .sum();
    sum / key.len() as f64
}

/// Scale an entry's C-value by its IDF factor.
pub fn idf_scale(entry: &ConceptEntry, table: &ConceptTable, dfs: &DocFrequencies) -> f64 {
    c_value(entry, table) * idf_factor(&entry.key, dfs)
}

/// Compute and store scores for every entry. `dfs` enables the optional
/// IDF scaling; when absent the score is the plain C-value.
pub fn compute_scores(table: &mut ConceptTable, dfs: Option<&DocFrequencies>) {
    let scores: Vec<(ConceptKey, f64)> = table
        .entries()
        .map(|entry| {
            let score = match dfs {
                Some(dfs) => idf_scale(entry, table, dfs),
                None => c_value(entry, table),
            };
            (entry.key.clone(), score)
        })
        .collect();
    for (key, score) in scores {
        if let Some(entry) = table.entries.get_mut(&key) {
            entry.score = score;
        }
    }
}

/// One classified term.
#[derive(Debug, Clone)]
pub struct TermEntry {
    pub term_id: u32,
    pub score: f64,
    pub key: ConceptKey,
    /// Sorted variant phrases.
    pub variants: Vec<String>,
}

/// The automatically constructed term dictionary.
#[derive(Debug, Clone, Default)]
pub struct TermDictionary {
    terms: Vec<TermEntry>,
}

impl TermDictionary {
    pub fn terms(&self) -> &[TermEntry] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, term_id: u32) -> Option<&TermEntry> {
        self.terms.iter().find(|t| t.term_id == term_id)
    }

    /// Append a term; callers keep ids unique and in rank order.
    pub fn push(&mut self, term: TermEntry) {
        self.terms.push(term);
    }

    /// `terms.tsv` payload: one `term_id<TAB>score<TAB>variant` row per
    /// variant, scores with four decimals.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for term in &self.terms {
            for variant in &term.variants {
                out.push_str(&format!("{}\t{:.4}\t{}\n", term.term_id, term.score, variant));
            }
        }
        out
    }
}

/// Select entries scoring strictly above `threshold` and assign
/// sequential term ids in descending score order (ties broken by the
/// lexicographically least variant).
pub fn classify(table: &mut ConceptTable, threshold: f64) -> TermDictionary {
    let mut selected: Vec<(ConceptKey, f64, Vec<String>)> = table
        .entries()
        .filter(|e| e.score > threshold)
        .map(|e| (e.key.clone(), e.score, e.variants.iter().cloned().collect()))
        .collect();
    selected.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .expect("scores are finite")
            .then_with(|| a.2.cmp(&b.2))
    });
    let mut terms = Vec::with_capacity(selected.len());
    for (i, (key, score, variants)) in selected.into_iter().enumerate() {
        let term_id = (i + 1) as u32;
        if let Some(entry) = table.entries.get_mut(&key) {
            entry.term_id = Some(term_id);
        }
        terms.push(TermEntry { term_id, score, key, variants });
    }
    TermDictionary { terms }
}
