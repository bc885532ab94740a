//! Rule-based lemmatizer with an exception dictionary.
//!
//! Irregular forms resolve through the bundled exception file; regular
//! plural and verb suffixes are stripped by rule. Lemmatization runs
//! before stemming so that irregular inflection does not reach the
//! stemmer.

use std::collections::{HashMap, HashSet};

use crate::preprocess::{CoarseTag, PosTag};

const EXCEPTIONS_DATA: &str = include_str!("../../data/lemma_exceptions.tsv");

pub struct Lemmatizer {
    exceptions: HashMap<String, String>,
    verb_bases: HashSet<String>,
}

impl Lemmatizer {
    pub fn new(verb_bases: HashSet<String>) -> Self {
        let mut exceptions = HashMap::new();
        for line in EXCEPTIONS_DATA.lines() {
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            let (surface, lemma) = line
                .split_once('\t')
                .expect("bundled exception line is surface<TAB>lemma");
            exceptions.insert(surface.to_string(), lemma.to_string());
        }
        Lemmatizer { exceptions, verb_bases }
    }

    /// Lowercase lemma of `surface` given its tag.
    pub fn lemmatize(&self, surface: &str, tag: &PosTag) -> String {
        let lower = surface.to_lowercase();
        if let Some(lemma) = self.exceptions.get(&lower) {
            return lemma.clone();
        }
        match tag.coarse {
            CoarseTag::Nn => self.noun_lemma(&lower),
            CoarseTag::Vb => self.verb_lemma(&lower),
            _ => lower,
        }
    }

    fn noun_lemma(&self, w: &str) -> String {
        if w.len() >= 5 {
            if let Some(base) = w.strip_suffix("ies") {
                return format!("{base}y");
            }
        }
        if let Some(base) = w.strip_suffix("sses") {
            return format!("{base}ss");
        }
        for suffix in ["xes", "zes", "ches", "shes"] {
            if let Some(base) = w.strip_suffix(suffix) {
                return format!("{}{}", base, &suffix[..suffix.len() - 2]);
            }
        }
        if w.len() >= 4 && w.ends_with("es") {
            return w[..w.len() - 1].to_string();
        }
        if w.len() >= 3 && w.ends_with('s') && !w.ends_with("ss") && !w.ends_with("us") && !w.ends_with("is") {
            return w[..w.len() - 1].to_string();
        }
        w.to_string()
    }

    fn verb_lemma(&self, w: &str) -> String {
        if w.len() >= 5 {
            if let Some(base) = w.strip_suffix("ies") {
                return format!("{base}y");
            }
            if let Some(base) = w.strip_suffix("ied") {
                return format!("{base}y");
            }
        }
        for suffix in ["ed", "ing"] {
            if w.len() > suffix.len() + 1 {
                if let Some(base) = w.strip_suffix(suffix) {
                    return self.restore_base(base);
                }
            }
        }
        if w.len() >= 4 && w.ends_with("es") {
            let base_es = &w[..w.len() - 2];
            if self.verb_bases.contains(base_es) {
                return base_es.to_string();
            }
            return w[..w.len() - 1].to_string();
        }
        if w.len() >= 3 && w.ends_with('s') && !w.ends_with("ss") {
            return w[..w.len() - 1].to_string();
        }
        w.to_string()
    }

    /// Reconstruct a verb base after stripping -ed/-ing: prefer a known
    /// base, then base+e, then undoubling; otherwise fall back to
    /// e-restoration after at/bl/iz and consonant undoubling.
    fn restore_base(&self, base: &str) -> String {
        if self.verb_bases.contains(base) {
            return base.to_string();
        }
        let with_e = format!("{base}e");
        if self.verb_bases.contains(&with_e) {
            return with_e;
        }
        let bytes = base.as_bytes();
        let doubled = bytes.len() >= 2
            && bytes[bytes.len() - 1] == bytes[bytes.len() - 2]
            && !bytes[bytes.len() - 1].is_ascii_digit();
        if doubled && self.verb_bases.contains(&base[..base.len() - 1]) {
            return base[..base.len() - 1].to_string();
        }
        if base.ends_with("at") || base.ends_with("bl") || base.ends_with("iz") {
            return with_e;
        }
        if doubled && !matches!(bytes[bytes.len() - 1], b'l' | b's' | b'z') {
            return base[..base.len() - 1].to_string();
        }
        base.to_string()
    }
}
