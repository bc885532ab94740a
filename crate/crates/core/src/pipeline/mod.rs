//! End-to-end orchestration of the nine pipeline steps, with per-step
//! timing and the scaling benchmark harness.

mod quadfit;

pub use quadfit::{fit_quadratic, QuadraticFit};

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::acronyms::{
    expand_nested, integrate_acronyms, resolve_acronyms, AcronymEntry, AcronymMode,
};
use crate::error::{Error, Result};
use crate::extract::{compile_pattern, extract_corpus, CandidateOccurrence, DEFAULT_PATTERN};
use crate::markup::{
    concordances, emit_concordance_tsv, emit_index_html, emit_inline_html, emit_standoff,
    match_phrases, Annotation, ColorScheme, ConcordanceLine,
};
use crate::normalize::{
    merge_tokenization_variants, normalize_tokens, to_concept_key, SimilarityParams, Stopwords,
};
use crate::preprocess::{
    preprocess_source, read_sources, Analyzer, Document, DocumentSource, InputFormat,
};
use crate::score::{
    build_nest_sets, classify, compute_scores, ConceptTable, DocFrequencies, TermDictionary,
};

/// The nine step names, in execution order.
pub const STEP_NAMES: [&str; 9] = [
    "preprocess",
    "extract",
    "normalize",
    "acronym_recognition",
    "acronym_integration",
    "token_normalization",
    "classification",
    "markup",
    "visualization",
];

/// Everything a run needs; defaults follow the documented knobs.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub input: PathBuf,
    pub format: InputFormat,
    pub pattern: String,
    pub acronym_mode: AcronymMode,
    pub similarity: SimilarityParams,
    pub threshold: f64,
    pub idf: bool,
    pub stopwords_path: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub seed: u64,
    pub bench: bool,
    pub window: usize,
}

impl PipelineConfig {
    pub fn new(input: impl Into<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        PipelineConfig {
            input: input.into(),
            format: InputFormat::Raw,
            pattern: DEFAULT_PATTERN.to_string(),
            acronym_mode: AcronymMode::Explicit,
            similarity: SimilarityParams::default(),
            threshold: 2.0,
            idf: false,
            stopwords_path: None,
            out_dir: out_dir.into(),
            seed: 0,
            bench: false,
            window: 40,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.similarity.validate().map_err(Error::Config)?;
        if !self.threshold.is_finite() {
            return Err(Error::Config("threshold must be finite".into()));
        }
        Ok(())
    }

    fn stopwords(&self) -> Result<Stopwords> {
        match &self.stopwords_path {
            Some(path) => Stopwords::from_file(path),
            None => Ok(Stopwords::bundled()),
        }
    }
}

/// Wall-clock seconds spent in one module for a given corpus size.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TimingRecord {
    pub module: String,
    pub docs: usize,
    pub seconds: f64,
}

/// In-memory results of one pipeline run.
pub struct PipelineResult {
    pub corpus: Vec<Document>,
    pub table: ConceptTable,
    pub acronyms: Vec<AcronymEntry>,
    pub dictionary: TermDictionary,
    pub annotations: Vec<Annotation>,
    pub concordance_lines: Vec<ConcordanceLine>,
    pub terms_tsv: String,
    pub annotations_tsv: String,
    pub concordances_tsv: String,
    /// `(file name, content)` pairs destined for the html/ directory.
    pub html_pages: Vec<(String, String)>,
    pub timings: Vec<TimingRecord>,
}

struct StepTimer {
    records: Vec<TimingRecord>,
    docs: usize,
}

impl StepTimer {
    fn time<T>(&mut self, module: &str, f: impl FnOnce() -> T) -> T {
        let started = Instant::now();
        let value = f();
        self.records.push(TimingRecord {
            module: module.to_string(),
            docs: self.docs,
            seconds: started.elapsed().as_secs_f64(),
        });
        value
    }
}

/// Run all nine steps over in-memory document sources.
pub fn run_steps(sources: &[DocumentSource], config: &PipelineConfig) -> Result<PipelineResult> {
    config.validate()?;
    let stopwords = config.stopwords()?;
    let analyzer = Analyzer::new(stopwords);
    let pattern = compile_pattern(&config.pattern).map_err(|e| e.in_step("extract"))?;
    let mut timer = StepTimer { records: Vec::new(), docs: sources.len() };

    let corpus: Vec<Document> = timer.time("preprocess", || {
        sources.iter().map(|s| preprocess_source(&analyzer, s)).collect()
    });

    let candidates: Vec<CandidateOccurrence> =
        timer.time("extract", || extract_corpus(&corpus, &pattern));

    let (retok, mut table) = timer.time("normalize", || {
        let retok = merge_tokenization_variants(&candidates, &config.similarity);
        let doc_index: std::collections::HashMap<&str, &Document> =
            corpus.iter().map(|d| (d.id.as_str(), d)).collect();
        let mut table = ConceptTable::new();
        for occ in &candidates {
            let tokens = doc_index
                .get(occ.doc_id.as_str())
                .and_then(|d| d.sentences.get(occ.sentence_index))
                .map(|s| &s.tokens[occ.token_range.0..=occ.token_range.1])
                .unwrap_or(&[]);
            if let Some(key) = to_concept_key(tokens, &retok, &analyzer) {
                let variant = occ.surface.to_lowercase();
                table.insert_occurrence(key, variant, occ.clone());
            }
        }
        (retok, table)
    });

    let acronym_entries = timer.time("acronym_recognition", || {
        resolve_acronyms(config.acronym_mode, &corpus, &table, &retok, &analyzer)
    });

    timer.time("acronym_integration", || {
        integrate_acronyms(&mut table, &acronym_entries, &corpus);
        expand_nested(&mut table, &acronym_entries);
    });

    timer.time("token_normalization", || {
        normalize_tokens(&mut table, &config.similarity);
    });

    let dictionary = timer.time("classification", || {
        build_nest_sets(&mut table);
        let dfs = config
            .idf
            .then(|| DocFrequencies::from_table(&table, corpus.len()));
        compute_scores(&mut table, dfs.as_ref());
        classify(&mut table, config.threshold)
    });

    let (annotations, annotations_tsv, concordance_lines, concordances_tsv) =
        timer.time("markup", || {
            let mut annotations = Vec::new();
            for doc in &corpus {
                annotations.extend(match_phrases(doc, &dictionary));
            }
            let annotations_tsv = emit_standoff(&annotations);
            let mut lines = Vec::new();
            for term in dictionary.terms() {
                lines.extend(concordances(term.term_id, &corpus, &annotations, config.window));
            }
            let concordances_tsv = emit_concordance_tsv(&lines);
            (annotations, annotations_tsv, lines, concordances_tsv)
        });

    let html_pages = timer.time("visualization", || {
        let colors = ColorScheme::seeded(config.seed);
        let mut pages = Vec::new();
        for doc in &corpus {
            let doc_annotations: Vec<Annotation> =
                annotations.iter().filter(|a| a.doc_id == doc.id).cloned().collect();
            pages.push((
                format!("{}.html", doc.id),
                emit_inline_html(doc, &doc_annotations, &colors),
            ));
        }
        pages.push((
            "index.html".to_string(),
            emit_index_html(&dictionary, &concordance_lines, &colors),
        ));
        pages
    });

    Ok(PipelineResult {
        terms_tsv: dictionary.to_tsv(),
        corpus,
        table,
        acronyms: acronym_entries,
        dictionary,
        annotations,
        concordance_lines,
        annotations_tsv,
        concordances_tsv,
        html_pages,
        timings: timer.records,
    })
}

/// Load the corpus, run the pipeline and write every output file.
pub fn run_pipeline(config: &PipelineConfig) -> Result<PipelineResult> {
    config.validate()?;
    let sources =
        read_sources(&config.input, config.format).map_err(|e| e.in_step("preprocess"))?;
    let result = run_steps(&sources, config)?;
    write_outputs(&result, config)?;
    Ok(result)
}

fn write_outputs(result: &PipelineResult, config: &PipelineConfig) -> Result<()> {
    let out = &config.out_dir;
    let html_dir = out.join("html");
    fs::create_dir_all(&html_dir)
        .map_err(|e| Error::Write { path: html_dir.clone(), source: e })?;
    write_file(&out.join("terms.tsv"), &result.terms_tsv)?;
    write_file(&out.join("annotations.tsv"), &result.annotations_tsv)?;
    write_file(&out.join("concordances.tsv"), &result.concordances_tsv)?;
    for (name, content) in &result.html_pages {
        write_file(&html_dir.join(name), content)?;
    }
    if config.bench {
        write_timings(&out.join("timings.json"), &result.timings)?;
    }
    Ok(())
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).map_err(|e| Error::Write { path: path.to_path_buf(), source: e })
}

pub fn write_timings(path: &Path, timings: &[TimingRecord]) -> Result<()> {
    let json = serde_json::to_string_pretty(timings).expect("timings serialize");
    write_file(path, &json)
}

pub fn read_timings(path: &Path) -> Result<Vec<TimingRecord>> {
    let content =
        fs::read_to_string(path).map_err(|e| Error::Io { path: path.to_path_buf(), source: e })?;
    serde_json::from_str(&content)
        .map_err(|e| Error::Config(format!("cannot parse timings {}: {e}", path.display())))
}

/// Timings TSV for external plotting: `module<TAB>docs<TAB>seconds`.
pub fn timings_tsv(timings: &[TimingRecord]) -> String {
    let mut out = String::from("module\tdocs\tseconds\n");
    for t in timings {
        out.push_str(&format!("{}\t{}\t{}\n", t.module, t.docs, t.seconds));
    }
    out
}

/// Scaling benchmark: split the corpus into `k_steps` equal subsets and
/// run the full pipeline on each cumulative union, collecting nine
/// timing records per run.
pub fn bench_scaling(config: &PipelineConfig, k_steps: usize) -> Result<Vec<TimingRecord>> {
    if k_steps == 0 {
        return Err(Error::Config("bench needs at least one step".into()));
    }
    let sources =
        read_sources(&config.input, config.format).map_err(|e| e.in_step("preprocess"))?;
    if sources.is_empty() || sources.len() % k_steps != 0 {
        return Err(Error::Config(format!(
            "corpus of {} documents does not split into {} equal subsets",
            sources.len(),
            k_steps
        )));
    }
    let subset = sources.len() / k_steps;
    let mut records = Vec::with_capacity(k_steps * STEP_NAMES.len());
    for k in 1..=k_steps {
        let result = run_steps(&sources[..k * subset], config)?;
        records.extend(result.timings);
    }
    Ok(records)
}
