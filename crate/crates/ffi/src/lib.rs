//! C ABI for the term recognition pipeline.
//!
//! The interface follows the usual opaque-handle pattern: build a
//! `TwConfig`, run it over a corpus directory to get a `TwResult`,
//! query the result, free both. Functions return `TW_OK` or an error
//! code; `tw_last_error` exposes the message for the current thread.
//! Strings returned from a result stay valid until the result is freed.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::{c_char, c_double, c_int};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use termweaver::acronyms::AcronymMode;
use termweaver::pipeline::{run_steps, PipelineConfig};
use termweaver::preprocess::{read_sources, InputFormat};

pub const TW_OK: c_int = 0;
pub const TW_ERR_NULL_ARGUMENT: c_int = 1;
pub const TW_ERR_INVALID_UTF8: c_int = 2;
pub const TW_ERR_INVALID_ARGUMENT: c_int = 3;
pub const TW_ERR_RUN_FAILED: c_int = 4;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("NUL stripped above");
    });
}

/// Message of the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tw_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string; never freed.
#[no_mangle]
pub extern "C" fn tw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Pipeline configuration handle.
pub struct TwConfig {
    inner: PipelineConfig,
}

/// Completed run: dictionary, annotation counts and corpus statistics.
pub struct TwResult {
    terms: Vec<TermView>,
    document_count: usize,
    concept_count: usize,
    annotation_count: usize,
}

struct TermView {
    id: u32,
    score: f64,
    variants: Vec<CString>,
}

/// A configuration with the documented defaults: raw input, the default
/// extraction pattern, explicit acronyms, threshold 2.0.
#[no_mangle]
pub extern "C" fn tw_config_new() -> *mut TwConfig {
    let inner = PipelineConfig::new(PathBuf::new(), PathBuf::new());
    Box::into_raw(Box::new(TwConfig { inner }))
}

/// Free a configuration. NULL is accepted and ignored.
///
/// # Safety
/// `config` must be NULL or a pointer from [`tw_config_new`] that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn tw_config_free(config: *mut TwConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

unsafe fn utf8_arg<'a>(ptr: *const c_char) -> Result<&'a str, c_int> {
    if ptr.is_null() {
        set_error("argument is NULL");
        return Err(TW_ERR_NULL_ARGUMENT);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        TW_ERR_INVALID_UTF8
    })
}

unsafe fn config_mut<'a>(config: *mut TwConfig) -> Result<&'a mut TwConfig, c_int> {
    if config.is_null() {
        set_error("config handle is NULL");
        return Err(TW_ERR_NULL_ARGUMENT);
    }
    Ok(&mut *config)
}

/// Set the input format: "raw" or "pretagged".
///
/// # Safety
/// `config` must be a live handle; `format` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn tw_config_set_format(
    config: *mut TwConfig,
    format: *const c_char,
) -> c_int {
    let cfg = match config_mut(config) {
        Ok(c) => c,
        Err(code) => return code,
    };
    match utf8_arg(format) {
        Ok("raw") => cfg.inner.format = InputFormat::Raw,
        Ok("pretagged") => cfg.inner.format = InputFormat::Pretagged,
        Ok(other) => {
            set_error(&format!("unknown format {other:?}"));
            return TW_ERR_INVALID_ARGUMENT;
        }
        Err(code) => return code,
    }
    TW_OK
}

/// Set the acronym recognition mode: "explicit", "implicit" or "off".
///
/// # Safety
/// `config` must be a live handle; `mode` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn tw_config_set_acronym_mode(
    config: *mut TwConfig,
    mode: *const c_char,
) -> c_int {
    let cfg = match config_mut(config) {
        Ok(c) => c,
        Err(code) => return code,
    };
    match utf8_arg(mode) {
        Ok("explicit") => cfg.inner.acronym_mode = AcronymMode::Explicit,
        Ok("implicit") => cfg.inner.acronym_mode = AcronymMode::Implicit,
        Ok("off") => cfg.inner.acronym_mode = AcronymMode::Off,
        Ok(other) => {
            set_error(&format!("unknown acronym mode {other:?}"));
            return TW_ERR_INVALID_ARGUMENT;
        }
        Err(code) => return code,
    }
    TW_OK
}

/// Override the extraction pattern.
///
/// # Safety
/// `config` must be a live handle; `pattern` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn tw_config_set_pattern(
    config: *mut TwConfig,
    pattern: *const c_char,
) -> c_int {
    let cfg = match config_mut(config) {
        Ok(c) => c,
        Err(code) => return code,
    };
    match utf8_arg(pattern) {
        Ok(source) => {
            cfg.inner.pattern = source.to_string();
            TW_OK
        }
        Err(code) => code,
    }
}

/// Replace the stopword list with a one-word-per-line file.
///
/// # Safety
/// `config` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn tw_config_set_stopwords_path(
    config: *mut TwConfig,
    path: *const c_char,
) -> c_int {
    let cfg = match config_mut(config) {
        Ok(c) => c,
        Err(code) => return code,
    };
    match utf8_arg(path) {
        Ok(p) => {
            cfg.inner.stopwords_path = Some(PathBuf::from(p));
            TW_OK
        }
        Err(code) => code,
    }
}

/// Set the classification threshold (strictly-greater cut).
///
/// # Safety
/// `config` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tw_config_set_threshold(
    config: *mut TwConfig,
    threshold: c_double,
) -> c_int {
    match config_mut(config) {
        Ok(cfg) => {
            cfg.inner.threshold = threshold;
            TW_OK
        }
        Err(code) => code,
    }
}

/// Set the token- and phrase-level similarity thresholds.
///
/// # Safety
/// `config` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tw_config_set_similarity(
    config: *mut TwConfig,
    token_threshold: c_double,
    phrase_threshold: c_double,
) -> c_int {
    match config_mut(config) {
        Ok(cfg) => {
            cfg.inner.similarity.token_threshold = token_threshold;
            cfg.inner.similarity.phrase_threshold = phrase_threshold;
            TW_OK
        }
        Err(code) => code,
    }
}

/// Enable (nonzero) or disable inverse-document-frequency scaling.
///
/// # Safety
/// `config` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tw_config_set_idf(config: *mut TwConfig, enabled: c_int) -> c_int {
    match config_mut(config) {
        Ok(cfg) => {
            cfg.inner.idf = enabled != 0;
            TW_OK
        }
        Err(code) => code,
    }
}

/// Seed for the highlight color scheme.
///
/// # Safety
/// `config` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tw_config_set_seed(config: *mut TwConfig, seed: u64) -> c_int {
    match config_mut(config) {
        Ok(cfg) => {
            cfg.inner.seed = seed;
            TW_OK
        }
        Err(code) => code,
    }
}

/// Concordance context width in characters.
///
/// # Safety
/// `config` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tw_config_set_window(config: *mut TwConfig, window: usize) -> c_int {
    match config_mut(config) {
        Ok(cfg) => {
            cfg.inner.window = window;
            TW_OK
        }
        Err(code) => code,
    }
}

/// Run the pipeline over `input` (a file or directory). When `out_dir`
/// is non-NULL the usual output files are written there; otherwise the
/// run stays in memory. On success `*result` owns a new handle.
///
/// # Safety
/// `config` must be a live handle, `input` a NUL-terminated string,
/// `out_dir` NULL or a NUL-terminated string, and `result` a valid
/// out-pointer.
#[no_mangle]
pub unsafe extern "C" fn tw_run(
    config: *const TwConfig,
    input: *const c_char,
    out_dir: *const c_char,
    result: *mut *mut TwResult,
) -> c_int {
    if config.is_null() || result.is_null() {
        set_error("config or result pointer is NULL");
        return TW_ERR_NULL_ARGUMENT;
    }
    let input = match utf8_arg(input) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let out_dir = if out_dir.is_null() {
        None
    } else {
        match utf8_arg(out_dir) {
            Ok(s) => Some(PathBuf::from(s)),
            Err(code) => return code,
        }
    };

    let mut run_config = (*config).inner.clone();
    run_config.input = PathBuf::from(input);

    let outcome = catch_unwind(AssertUnwindSafe(|| match out_dir {
        Some(dir) => {
            run_config.out_dir = dir;
            termweaver::run_pipeline(&run_config)
        }
        None => {
            let sources =
                read_sources(&run_config.input, run_config.format).map_err(|e| {
                    termweaver::Error::Step { step: "preprocess", source: Box::new(e) }
                })?;
            run_steps(&sources, &run_config)
        }
    }));

    match outcome {
        Ok(Ok(run)) => {
            let terms = run
                .dictionary
                .terms()
                .iter()
                .map(|t| TermView {
                    id: t.term_id,
                    score: t.score,
                    variants: t
                        .variants
                        .iter()
                        .map(|v| CString::new(v.replace('\0', " ")).expect("NUL stripped"))
                        .collect(),
                })
                .collect();
            let handle = TwResult {
                terms,
                document_count: run.corpus.len(),
                concept_count: run.table.len(),
                annotation_count: run.annotations.len(),
            };
            *result = Box::into_raw(Box::new(handle));
            TW_OK
        }
        Ok(Err(err)) => {
            set_error(&err.to_string());
            TW_ERR_RUN_FAILED
        }
        Err(_) => {
            set_error("internal panic during pipeline run");
            TW_ERR_RUN_FAILED
        }
    }
}

/// Free a result handle. NULL is accepted and ignored.
///
/// # Safety
/// `result` must be NULL or a pointer from [`tw_run`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tw_result_free(result: *mut TwResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

unsafe fn result_ref<'a>(result: *const TwResult) -> Option<&'a TwResult> {
    if result.is_null() {
        set_error("result handle is NULL");
        None
    } else {
        Some(&*result)
    }
}

/// Number of documents processed.
///
/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tw_result_document_count(result: *const TwResult) -> usize {
    result_ref(result).map_or(0, |r| r.document_count)
}

/// Number of concept entries in the final table.
///
/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tw_result_concept_count(result: *const TwResult) -> usize {
    result_ref(result).map_or(0, |r| r.concept_count)
}

/// Number of standoff annotations.
///
/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tw_result_annotation_count(result: *const TwResult) -> usize {
    result_ref(result).map_or(0, |r| r.annotation_count)
}

/// Number of classified terms.
///
/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tw_result_term_count(result: *const TwResult) -> usize {
    result_ref(result).map_or(0, |r| r.terms.len())
}

/// Identifier of the term at `index` (rank order); 0 when out of range.
///
/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tw_result_term_id(result: *const TwResult, index: usize) -> u32 {
    result_ref(result).and_then(|r| r.terms.get(index)).map_or(0, |t| t.id)
}

/// Score of the term at `index`; NaN when out of range.
///
/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tw_result_term_score(result: *const TwResult, index: usize) -> c_double {
    result_ref(result).and_then(|r| r.terms.get(index)).map_or(f64::NAN, |t| t.score)
}

/// Number of variants of the term at `index`; 0 when out of range.
///
/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tw_result_term_variant_count(
    result: *const TwResult,
    index: usize,
) -> usize {
    result_ref(result).and_then(|r| r.terms.get(index)).map_or(0, |t| t.variants.len())
}

/// Variant `variant_index` of the term at `term_index`. The pointer is
/// borrowed from the result and stays valid until `tw_result_free`;
/// NULL when out of range.
///
/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tw_result_term_variant(
    result: *const TwResult,
    term_index: usize,
    variant_index: usize,
) -> *const c_char {
    result_ref(result)
        .and_then(|r| r.terms.get(term_index))
        .and_then(|t| t.variants.get(variant_index))
        .map_or(std::ptr::null(), |v| v.as_ptr())
}
