//! Linguistic pre-processing: sentence splitting, tokenization, POS
//! tagging, lemmatization and stemming.
//!
//! Documents arrive either as raw UTF-8 text or in a pretagged vertical
//! format (`surface<TAB>tag<TAB>lemma<TAB>stem`, blank line = sentence
//! boundary, `#doc <id>` = document start). Pretagged input takes the
//! given values verbatim and bypasses the bundled tagger.

mod lemmatize;
mod sentences;
mod stem;
mod tagger;
mod tokenize;

pub use lemmatize::Lemmatizer;
pub use sentences::split_sentences;
pub use stem::stem;
pub use tagger::{LexiconTagger, Tagger};
pub use tokenize::tokenize;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
pub use crate::normalize::Stopwords;

/// A character range `[start, end)`; offsets count characters, not bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(end >= start);
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    /// Shift by `offset` characters.
    pub fn offset(&self, offset: usize) -> Span {
        Span::new(self.start + offset, self.end + offset)
    }
}

/// Coarse tag alphabet used by the extraction pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum CoarseTag {
    Nn = 0,
    Jj = 1,
    In = 2,
    Pos = 3,
    Vb = 4,
    Dt = 5,
    Other = 6,
}

impl CoarseTag {
    pub const COUNT: usize = 7;
    pub const ALL: [CoarseTag; 7] = [
        CoarseTag::Nn,
        CoarseTag::Jj,
        CoarseTag::In,
        CoarseTag::Pos,
        CoarseTag::Vb,
        CoarseTag::Dt,
        CoarseTag::Other,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            CoarseTag::Nn => "NN",
            CoarseTag::Jj => "JJ",
            CoarseTag::In => "IN",
            CoarseTag::Pos => "POS",
            CoarseTag::Vb => "VB",
            CoarseTag::Dt => "DT",
            CoarseTag::Other => "OTHER",
        }
    }

    pub fn from_name(name: &str) -> Option<CoarseTag> {
        Some(match name {
            "NN" => CoarseTag::Nn,
            "JJ" => CoarseTag::Jj,
            "IN" => CoarseTag::In,
            "POS" => CoarseTag::Pos,
            "VB" => CoarseTag::Vb,
            "DT" => CoarseTag::Dt,
            "OTHER" => CoarseTag::Other,
            _ => return None,
        })
    }
}

/// A fine-grained tag together with its coarse projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosTag {
    pub full: String,
    pub coarse: CoarseTag,
}

impl PosTag {
    pub fn new(full: &str) -> Self {
        PosTag { full: full.to_string(), coarse: coarse_of(full) }
    }
}

/// Deterministic projection from fine tags onto the 7-symbol alphabet.
/// All fine noun tags map to NN, adjectives to JJ, verbs (including
/// modals) to VB, prepositions to IN, the possessive marker to POS and
/// determiners to DT; everything else, numerals included, is OTHER.
fn coarse_of(full: &str) -> CoarseTag {
    match full {
        "IN" => CoarseTag::In,
        "POS" => CoarseTag::Pos,
        "DT" | "PDT" => CoarseTag::Dt,
        "MD" => CoarseTag::Vb,
        _ if full.starts_with("NN") => CoarseTag::Nn,
        _ if full.starts_with("JJ") => CoarseTag::Jj,
        _ if full.starts_with("VB") => CoarseTag::Vb,
        _ => CoarseTag::Other,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    /// Character span in document coordinates.
    pub char_span: Span,
    pub tag: PosTag,
    pub lemma: String,
    pub stem: String,
    pub is_stopword: bool,
}

#[derive(Debug, Clone)]
pub struct Sentence {
    /// Ordinal within the document.
    pub index: usize,
    /// Character span in document coordinates.
    pub char_span: Span,
    pub tokens: Vec<Token>,
}

#[derive(Debug, Clone)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub sentences: Vec<Sentence>,
}

impl Document {
    /// Slice `text` by character offsets.
    pub fn slice(&self, span: Span) -> String {
        slice_chars(&self.text, span)
    }
}

pub fn slice_chars(text: &str, span: Span) -> String {
    text.chars().skip(span.start).take(span.len()).collect()
}

/// Input corpus format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Raw,
    Pretagged,
}

/// Bundles the tagging, lemmatization, stemming and stopword resources
/// used to analyze raw text and retokenized phrases.
pub struct Analyzer {
    tagger: Box<dyn Tagger>,
    lemmatizer: Lemmatizer,
    stopwords: Stopwords,
}

impl Analyzer {
    pub fn new(stopwords: Stopwords) -> Self {
        let tagger = LexiconTagger::new();
        let lemmatizer = Lemmatizer::new(tagger.verb_bases().clone());
        Analyzer { tagger: Box::new(tagger), lemmatizer, stopwords }
    }

    /// Replace the bundled tagger.
    pub fn with_tagger(mut self, tagger: Box<dyn Tagger>) -> Self {
        self.tagger = tagger;
        self
    }

    pub fn stopwords(&self) -> &Stopwords {
        &self.stopwords
    }

    pub fn is_stopword(&self, surface: &str, lemma: &str) -> bool {
        self.stopwords.contains(&surface.to_lowercase()) || self.stopwords.contains(lemma)
    }

    /// Lemma and stem for a bare word outside any tagged context,
    /// treating it as a noun. Used when retokenization introduces tokens
    /// that never went through preprocessing.
    pub fn analyze_word(&self, surface: &str) -> (String, String) {
        let tag = PosTag::new("NN");
        let lemma = self.lemmatizer.lemmatize(surface, &tag);
        let stem = stem(&lemma);
        (lemma, stem)
    }

    /// Preprocess one raw document.
    pub fn preprocess(&self, id: &str, text: &str) -> Document {
        let mut sentences = Vec::new();
        for (index, sent_span) in split_sentences(text).into_iter().enumerate() {
            let sent_text = slice_chars(text, sent_span);
            let pieces = tokenize(&sent_text);
            let surfaces: Vec<String> = pieces.iter().map(|(s, _)| s.clone()).collect();
            let tags = self.tagger.tag(&surfaces);
            let tokens = surfaces
                .into_iter()
                .zip(pieces.into_iter().map(|(_, sp)| sp))
                .zip(tags)
                .map(|((surface, span), tag)| {
                    let lemma = self.lemmatizer.lemmatize(&surface, &tag);
                    let stem = stem(&lemma);
                    let is_stopword = self.is_stopword(&surface, &lemma);
                    Token {
                        surface,
                        char_span: span.offset(sent_span.start),
                        tag,
                        lemma,
                        stem,
                        is_stopword,
                    }
                })
                .collect();
            sentences.push(Sentence { index, char_span: sent_span, tokens });
        }
        Document { id: id.to_string(), text: text.to_string(), sentences }
    }

    /// Build a document from pretagged token rows, reconstructing the
    /// document text deterministically from the token stream.
    pub fn assemble_pretagged(&self, id: &str, sentences_rows: Vec<Vec<PretaggedRow>>) -> Document {
        let mut text = String::new();
        let mut char_len = 0usize;
        let mut sentences = Vec::new();
        for (index, rows) in sentences_rows.into_iter().enumerate() {
            let mut tokens = Vec::new();
            let mut sent_start = None;
            for row in rows {
                if char_len > 0 && !glues_left(&row.surface) && !text.ends_with(GLUE_RIGHT) {
                    text.push(' ');
                    char_len += 1;
                }
                let start = char_len;
                let surface_chars = row.surface.chars().count();
                text.push_str(&row.surface);
                char_len += surface_chars;
                sent_start.get_or_insert(start);
                let is_stopword = self.is_stopword(&row.surface, &row.lemma);
                tokens.push(Token {
                    surface: row.surface,
                    char_span: Span::new(start, char_len),
                    tag: PosTag::new(&row.tag),
                    lemma: row.lemma,
                    stem: row.stem,
                    is_stopword,
                });
            }
            let span = Span::new(sent_start.unwrap_or(char_len), char_len);
            sentences.push(Sentence { index, char_span: span, tokens });
        }
        Document { id: id.to_string(), text, sentences }
    }
}

/// Tokens that attach to the preceding token without a space.
fn glues_left(surface: &str) -> bool {
    matches!(surface, "." | "," | ";" | ":" | "!" | "?" | ")" | "]" | "}" | "%")
        || surface.starts_with('\'')
        || surface.starts_with('\u{2019}')
}

/// Tokens that attach to the following token without a space.
const GLUE_RIGHT: [char; 3] = ['(', '[', '{'];

/// One line of the pretagged vertical format.
#[derive(Debug, Clone)]
pub struct PretaggedRow {
    pub surface: String,
    pub tag: String,
    pub lemma: String,
    pub stem: String,
}

/// An unprocessed document as read from disk.
#[derive(Debug, Clone)]
pub enum DocumentSource {
    Raw { id: String, text: String },
    Pretagged { id: String, sentences: Vec<Vec<PretaggedRow>> },
}

impl DocumentSource {
    pub fn id(&self) -> &str {
        match self {
            DocumentSource::Raw { id, .. } => id,
            DocumentSource::Pretagged { id, .. } => id,
        }
    }
}

/// Read document sources from a file or directory without processing
/// them. Raw mode reads each file as one UTF-8 document, with the id
/// derived from the file name. Pretagged mode parses the vertical
/// format; ids come from `#doc` lines. Sources come back sorted by id.
pub fn read_sources(source: &Path, format: InputFormat) -> Result<Vec<DocumentSource>> {
    let files = list_input_files(source)?;
    let mut sources: BTreeMap<String, DocumentSource> = BTreeMap::new();
    for file in files {
        match format {
            InputFormat::Raw => {
                let text = fs::read_to_string(&file)
                    .map_err(|source| Error::Io { path: file.clone(), source })?;
                let text = text.strip_prefix('\u{feff}').unwrap_or(&text).to_string();
                let id = file
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| file.to_string_lossy().into_owned());
                sources.insert(id.clone(), DocumentSource::Raw { id, text });
            }
            InputFormat::Pretagged => {
                for (id, rows) in parse_pretagged(&file)? {
                    sources.insert(id.clone(), DocumentSource::Pretagged { id, sentences: rows });
                }
            }
        }
    }
    Ok(sources.into_values().collect())
}

/// Preprocess one source into a document.
pub fn preprocess_source(analyzer: &Analyzer, source: &DocumentSource) -> Document {
    match source {
        DocumentSource::Raw { id, text } => analyzer.preprocess(id, text),
        DocumentSource::Pretagged { id, sentences } => {
            analyzer.assemble_pretagged(id, sentences.clone())
        }
    }
}

/// Load and preprocess a corpus from a file or directory.
pub fn load_corpus(source: &Path, format: InputFormat, analyzer: &Analyzer) -> Result<Vec<Document>> {
    Ok(read_sources(source, format)?
        .iter()
        .map(|s| preprocess_source(analyzer, s))
        .collect())
}

fn list_input_files(source: &Path) -> Result<Vec<PathBuf>> {
    let meta = fs::metadata(source)
        .map_err(|e| Error::Io { path: source.to_path_buf(), source: e })?;
    if meta.is_file() {
        return Ok(vec![source.to_path_buf()]);
    }
    let mut files = Vec::new();
    let entries = fs::read_dir(source)
        .map_err(|e| Error::Io { path: source.to_path_buf(), source: e })?;
    for entry in entries {
        let entry = entry.map_err(|e| Error::Io { path: source.to_path_buf(), source: e })?;
        let path = entry.path();
        if path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Parse a pretagged vertical file into `(doc id, sentences of rows)`.
pub fn parse_pretagged(path: &Path) -> Result<Vec<(String, Vec<Vec<PretaggedRow>>)>> {
    let content =
        fs::read_to_string(path).map_err(|e| Error::Io { path: path.to_path_buf(), source: e })?;
    let content = content.strip_prefix('\u{feff}').unwrap_or(&content);
    let mut docs: Vec<(String, Vec<Vec<PretaggedRow>>)> = Vec::new();
    let mut current_sentence: Vec<PretaggedRow> = Vec::new();

    let flush_sentence =
        |docs: &mut Vec<(String, Vec<Vec<PretaggedRow>>)>, sent: &mut Vec<PretaggedRow>| {
            if !sent.is_empty() {
                if let Some((_, sentences)) = docs.last_mut() {
                    sentences.push(std::mem::take(sent));
                }
            }
        };

    for (lineno, line) in content.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.strip_suffix('\r').unwrap_or(line);
        if let Some(id) = line.strip_prefix("#doc") {
            flush_sentence(&mut docs, &mut current_sentence);
            let id = id.trim();
            if id.is_empty() {
                return Err(Error::PretaggedFormat {
                    path: path.to_path_buf(),
                    line: lineno,
                    message: "#doc line is missing a document id".into(),
                });
            }
            docs.push((id.to_string(), Vec::new()));
            continue;
        }
        if line.trim().is_empty() {
            flush_sentence(&mut docs, &mut current_sentence);
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(Error::PretaggedFormat {
                path: path.to_path_buf(),
                line: lineno,
                message: format!("expected 4 TAB-separated fields, found {}", fields.len()),
            });
        }
        if fields.iter().any(|f| f.is_empty()) {
            return Err(Error::PretaggedFormat {
                path: path.to_path_buf(),
                line: lineno,
                message: "empty field".into(),
            });
        }
        if docs.is_empty() {
            return Err(Error::PretaggedFormat {
                path: path.to_path_buf(),
                line: lineno,
                message: "token line before any #doc line".into(),
            });
        }
        current_sentence.push(PretaggedRow {
            surface: fields[0].to_string(),
            tag: fields[1].to_string(),
            lemma: fields[2].to_string(),
            stem: fields[3].to_string(),
        });
    }
    flush_sentence(&mut docs, &mut current_sentence);
    Ok(docs)
}
