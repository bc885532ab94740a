//! Sorted vocabulary index with prefix, ligature and length filters.
//!
//! Candidate retrieval narrows the vocabulary before any similarity is
//! computed: only strings sharing the first letter (with ae/oe ligature
//! variants admitted for e-initial strings) whose length differs by at
//! most one character are returned. Prefix lookup binary-searches the
//! sorted entries, so retrieval is logarithmic in the index size plus
//! output.

/// Lexicographically sorted string index.
#[derive(Debug, Clone)]
pub struct SimilarityIndex {
    entries: Vec<String>,
}

impl SimilarityIndex {
    pub fn build<I: IntoIterator<Item = String>>(vocabulary: I) -> Self {
        let mut entries: Vec<String> = vocabulary.into_iter().collect();
        entries.sort();
        entries.dedup();
        SimilarityIndex { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[String] {
        &self.entries
    }

    /// All entries starting with `prefix`, located by binary search.
    pub fn with_prefix<'a>(&'a self, prefix: &str) -> &'a [String] {
        let lo = self.entries.partition_point(|e| e.as_str() < prefix);
        let mut hi = lo;
        while hi < self.entries.len() && self.entries[hi].starts_with(prefix) {
            hi += 1;
        }
        &self.entries[lo..hi]
    }
}

/// Prefixes to probe for `s`: its first letter, widened across the
/// ae/oe ligature spelling divide for e-initial strings.
fn probe_prefixes(s: &str) -> Vec<String> {
    let mut chars = s.chars();
    let first = match chars.next() {
        Some(c) => c,
        None => return Vec::new(),
    };
    let mut prefixes = vec![first.to_string()];
    if first == 'e' {
        prefixes.push("ae".to_string());
        prefixes.push("oe".to_string());
    } else if (first == 'a' || first == 'o') && chars.next() == Some('e') {
        prefixes.push("e".to_string());
    }
    prefixes
}

/// Merge candidates for `s`: same first letter (or ligature variant),
/// length within one character, excluding `s` itself.
pub fn similar_candidates<'a>(index: &'a SimilarityIndex, s: &str) -> Vec<&'a String> {
    let s_len = s.chars().count();
    let mut out = Vec::new();
    for prefix in probe_prefixes(s) {
        for candidate in index.with_prefix(&prefix) {
            if candidate == s {
                continue;
            }
            let c_len = candidate.chars().count();
            if c_len.abs_diff(s_len) <= 1 {
                out.push(candidate);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The scope the filters promise to cover exactly: used by tests to
/// compare filtered retrieval with exhaustive pairing.
pub fn within_filter_scope(a: &str, b: &str) -> bool {
    if a.chars().count().abs_diff(b.chars().count()) > 1 {
        return false;
    }
    let first = |s: &str| s.chars().next();
    if first(a).is_some() && first(a) == first(b) {
        return true;
    }
    let ligature = |s: &str| s.starts_with("ae") || s.starts_with("oe");
    (a.starts_with('e') && ligature(b)) || (b.starts_with('e') && ligature(a))
}
