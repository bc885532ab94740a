//! Jaro and Jaro-Winkler string similarity.
//!
//! The matching window is d = floor(min(|s1|, |s2|) / 2) and the prefix
//! bonus has no quality gate; both follow the definitions this pipeline
//! is built around rather than the more common variants.

/// Parameters shared by the similarity functions and the merge steps.
#[derive(Debug, Clone, Copy)]
pub struct SimilarityParams {
    /// Prefix scaling factor, in [0, 0.25].
    pub prefix_scale: f64,
    /// Longest common prefix counted toward the bonus.
    pub max_prefix: usize,
    /// Minimum Jaro-Winkler similarity for merging key elements.
    pub token_threshold: f64,
    /// Minimum Jaro-Winkler similarity for merging phrase tokenizations.
    pub phrase_threshold: f64,
}

impl Default for SimilarityParams {
    fn default() -> Self {
        SimilarityParams {
            prefix_scale: 0.1,
            max_prefix: 4,
            token_threshold: 0.94,
            phrase_threshold: 0.95,
        }
    }
}

impl SimilarityParams {
    pub fn validate(&self) -> Result<(), String> {
        if !(0.0..=0.25).contains(&self.prefix_scale) {
            return Err(format!("prefix scale {} outside [0, 0.25]", self.prefix_scale));
        }
        if self.prefix_scale * self.max_prefix as f64 > 1.0 {
            return Err("prefix scale times max prefix exceeds 1".into());
        }
        for (name, v) in [
            ("token similarity threshold", self.token_threshold),
            ("phrase similarity threshold", self.phrase_threshold),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(format!("{name} {v} outside [0, 1]"));
            }
        }
        Ok(())
    }
}

/// Jaro similarity in [0, 1]: 1 exactly on identical strings, 0 when
/// there are no matching characters or either string is empty.
pub fn jaro(s1: &str, s2: &str) -> f64 {
    if s1 == s2 {
        return 1.0;
    }
    let a: Vec<char> = s1.chars().collect();
    let b: Vec<char> = s2.chars().collect();
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let window = a.len().min(b.len()) / 2;

    let mut a_matched = vec![false; a.len()];
    let mut b_matched = vec![false; b.len()];
    let mut matches = 0usize;
    for (i, &c) in a.iter().enumerate() {
        let lo = i.saturating_sub(window);
        let hi = (i + window).min(b.len() - 1);
        for j in lo..=hi {
            if !b_matched[j] && b[j] == c {
                a_matched[i] = true;
                b_matched[j] = true;
                matches += 1;
                break;
            }
        }
    }
    if matches == 0 {
        return 0.0;
    }

    // t is half the number of matched characters that sit out of order.
    let seq_a = a.iter().zip(&a_matched).filter(|(_, &m)| m).map(|(c, _)| *c);
    let seq_b: Vec<char> = b.iter().zip(&b_matched).filter(|(_, &m)| m).map(|(c, _)| *c).collect();
    let mismatched = seq_a.zip(seq_b.iter()).filter(|(x, y)| x != *y).count();
    let transpositions = mismatched as f64 / 2.0;

    let m = matches as f64;
    (m / a.len() as f64 + m / b.len() as f64 + (m - transpositions) / m) / 3.0
}

/// Jaro-Winkler similarity: the Jaro value scaled in favour of strings
/// sharing a common prefix, JW = J + l·p·(1 − J).
pub fn jaro_winkler(s1: &str, s2: &str, params: &SimilarityParams) -> f64 {
    let j = jaro(s1, s2);
    let prefix = s1
        .chars()
        .zip(s2.chars())
        .take(params.max_prefix)
        .take_while(|(x, y)| x == y)
        .count();
    j + prefix as f64 * params.prefix_scale * (1.0 - j)
}
