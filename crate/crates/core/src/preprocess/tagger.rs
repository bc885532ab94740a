//! Deterministic part-of-speech tagging.
//!
//! The bundled tagger combines a closed-class lexicon with suffix and
//! shape heuristics, defaulting to NN for unknown words. Any
//! implementation of [`Tagger`] can replace it; pretagged input bypasses
//! tagging entirely.

use std::collections::{HashMap, HashSet};

use crate::preprocess::PosTag;

/// A function from a token sequence to one tag per token.
pub trait Tagger: Send + Sync {
    fn tag(&self, surfaces: &[String]) -> Vec<PosTag>;
}

const LEXICON_DATA: &str = include_str!("../../data/tagger_lexicon.tsv");

/// Lexicon-plus-suffix tagger over fine (Penn-style) tags.
pub struct LexiconTagger {
    lexicon: HashMap<String, String>,
    verb_bases: HashSet<String>,
}

impl LexiconTagger {
    pub fn new() -> Self {
        let mut lexicon = HashMap::new();
        let mut verb_bases = HashSet::new();
        for line in LEXICON_DATA.lines() {
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            let (word, tag) = line
                .split_once('\t')
                .expect("bundled lexicon line is word<TAB>tag");
            if tag == "VB" {
                verb_bases.insert(word.to_string());
            }
            lexicon.insert(word.to_string(), tag.to_string());
        }
        LexiconTagger { lexicon, verb_bases }
    }

    /// Base forms of verbs the tagger knows; shared with the lemmatizer
    /// for -ed/-ing restoration.
    pub fn verb_bases(&self) -> &HashSet<String> {
        &self.verb_bases
    }

    fn tag_one(&self, surface: &str, sentence_initial: bool) -> PosTag {
        if !surface.chars().any(|c| c.is_alphanumeric()) {
            return PosTag::new(surface);
        }
        let lower = surface.to_lowercase();
        if let Some(tag) = self.lexicon.get(lower.as_str()) {
            return PosTag::new(tag);
        }
        let chars: Vec<char> = surface.chars().collect();
        if chars.iter().all(|c| c.is_ascii_digit() || matches!(c, '.' | ',' | '%')) {
            return PosTag::new("CD");
        }
        if chars.len() >= 2 && chars.iter().all(|c| c.is_ascii_uppercase()) {
            return PosTag::new("NNP");
        }
        if chars.len() == 1 {
            return PosTag::new(if chars[0].is_uppercase() { "NNP" } else { "NN" });
        }
        if chars[0].is_uppercase() && !sentence_initial {
            return PosTag::new("NNP");
        }
        self.by_suffix(&lower)
    }

    fn by_suffix(&self, lower: &str) -> PosTag {
        const NOUN: &[&str] = &[
            "tion", "sion", "ment", "ness", "ity", "ism", "ance", "ence", "ship", "hood", "logy",
        ];
        const ADJ: &[&str] = &[
            "ous", "ive", "ical", "able", "ible", "ful", "less", "ish", "al", "ic",
        ];
        if lower.ends_with("ly") {
            return PosTag::new("RB");
        }
        if NOUN.iter().any(|s| lower.ends_with(s)) {
            return PosTag::new("NN");
        }
        if ADJ.iter().any(|s| lower.ends_with(s)) {
            return PosTag::new("JJ");
        }
        if let Some(base) = lower.strip_suffix("ed") {
            return if self.knows_verb_base(base) {
                PosTag::new("VBN")
            } else {
                PosTag::new("JJ")
            };
        }
        if let Some(base) = lower.strip_suffix("ing") {
            return if self.knows_verb_base(base) {
                PosTag::new("VBG")
            } else {
                PosTag::new("NN")
            };
        }
        if lower.ends_with('s') && !lower.ends_with("ss") {
            let base = &lower[..lower.len() - 1];
            let base_es = lower.strip_suffix("es").unwrap_or(base);
            if self.verb_bases.contains(base) || self.verb_bases.contains(base_es) {
                return PosTag::new("VBZ");
            }
            return PosTag::new("NNS");
        }
        PosTag::new("NN")
    }

    /// Whether `base` (possibly missing a final e or carrying a doubled
    /// consonant) is a known verb.
    fn knows_verb_base(&self, base: &str) -> bool {
        if self.verb_bases.contains(base) {
            return true;
        }
        if self.verb_bases.contains(&format!("{base}e")) {
            return true;
        }
        let bytes = base.as_bytes();
        if bytes.len() >= 2 && bytes[bytes.len() - 1] == bytes[bytes.len() - 2] {
            return self.verb_bases.contains(&base[..base.len() - 1]);
        }
        false
    }
}

impl Default for LexiconTagger {
    fn default() -> Self {
        Self::new()
    }
}

impl Tagger for LexiconTagger {
    fn tag(&self, surfaces: &[String]) -> Vec<PosTag> {
        surfaces
            .iter()
            .enumerate()
            .map(|(i, s)| self.tag_one(s, i == 0))
            .collect()
    }
}
