#ifndef TERMWEAVER_H
#define TERMWEAVER_H

/* Generated by cbindgen from termweaver-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define TW_OK 0

#define TW_ERR_NULL_ARGUMENT 1

#define TW_ERR_INVALID_UTF8 2

#define TW_ERR_INVALID_ARGUMENT 3

#define TW_ERR_RUN_FAILED 4

/**
 * Pipeline configuration handle.
 */
typedef struct TwConfig TwConfig;

/**
 * Completed run: dictionary, annotation counts and corpus statistics.
 */
typedef struct TwResult TwResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *tw_last_error(void);

/**
 * Library version as a static NUL-terminated string; never freed.
 */
const char *tw_version(void);

/**
 * A configuration with the documented defaults: raw input, the default
 * extraction pattern, explicit acronyms, threshold 2.0.
 */
struct TwConfig *tw_config_new(void);

/**
 * Free a configuration. NULL is accepted and ignored.
 *
 * # Safety
 * `config` must be NULL or a pointer from [`tw_config_new`] that has
 * not been freed.
 */
void tw_config_free(struct TwConfig *config);

/**
 * Set the input format: "raw" or "pretagged".
 *
 * # Safety
 * `config` must be a live handle; `format` a NUL-terminated string.
 */
int tw_config_set_format(struct TwConfig *config, const char *format);

/**
 * Set the acronym recognition mode: "explicit", "implicit" or "off".
 *
 * # Safety
 * `config` must be a live handle; `mode` a NUL-terminated string.
 */
int tw_config_set_acronym_mode(struct TwConfig *config, const char *mode);

/**
 * Override the extraction pattern.
 *
 * # Safety
 * `config` must be a live handle; `pattern` a NUL-terminated string.
 */
int tw_config_set_pattern(struct TwConfig *config, const char *pattern);

/**
 * Replace the stopword list with a one-word-per-line file.
 *
 * # Safety
 * `config` must be a live handle; `path` a NUL-terminated string.
 */
int tw_config_set_stopwords_path(struct TwConfig *config, const char *path);

/**
 * Set the classification threshold (strictly-greater cut).
 *
 * # Safety
 * `config` must be a live handle.
 */
int tw_config_set_threshold(struct TwConfig *config, double threshold);

/**
 * Set the token- and phrase-level similarity thresholds.
 *
 * # Safety
 * `config` must be a live handle.
 */
int tw_config_set_similarity(struct TwConfig *config,
                             double token_threshold,
                             double phrase_threshold);

/**
 * Enable (nonzero) or disable inverse-document-frequency scaling.
 *
 * # Safety
 * `config` must be a live handle.
 */
int tw_config_set_idf(struct TwConfig *config, int enabled);

/**
 * Seed for the highlight color scheme.
 *
 * # Safety
 * `config` must be a live handle.
 */
int tw_config_set_seed(struct TwConfig *config, uint64_t seed);

/**
 * Concordance context width in characters.
 *
 * # Safety
 * `config` must be a live handle.
 */
int tw_config_set_window(struct TwConfig *config, size_t window);

/**
 * Run the pipeline over `input` (a file or directory). When `out_dir`
 * is non-NULL the usual output files are written there; otherwise the
 * run stays in memory. On success `*result` owns a new handle.
 *
 * # Safety
 * `config` must be a live handle, `input` a NUL-terminated string,
 * `out_dir` NULL or a NUL-terminated string, and `result` a valid
 * out-pointer.
 */
int tw_run(const struct TwConfig *config,
           const char *input,
           const char *out_dir,
           struct TwResult **result);

/**
 * Free a result handle. NULL is accepted and ignored.
 *
 * # Safety
 * `result` must be NULL or a pointer from [`tw_run`] not yet freed.
 */
void tw_result_free(struct TwResult *result);

/**
 * Number of documents processed.
 *
 * # Safety
 * `result` must be a live handle.
 */
size_t tw_result_document_count(const struct TwResult *result);

/**
 * Number of concept entries in the final table.
 *
 * # Safety
 * `result` must be a live handle.
 */
size_t tw_result_concept_count(const struct TwResult *result);

/**
 * Number of standoff annotations.
 *
 * # Safety
 * `result` must be a live handle.
 */
size_t tw_result_annotation_count(const struct TwResult *result);

/**
 * Number of classified terms.
 *
 * # Safety
 * `result` must be a live handle.
 */
size_t tw_result_term_count(const struct TwResult *result);

/**
 * Identifier of the term at `index` (rank order); 0 when out of range.
 *
 * # Safety
 * `result` must be a live handle.
 */
uint32_t tw_result_term_id(const struct TwResult *result, size_t index);

/**
 * Score of the term at `index`; NaN when out of range.
 *
 * # Safety
 * `result` must be a live handle.
 */
double tw_result_term_score(const struct TwResult *result, size_t index);

/**
 * Number of variants of the term at `index`; 0 when out of range.
 *
 * # Safety
 * `result` must be a live handle.
 */
size_t tw_result_term_variant_count(const struct TwResult *result, size_t index);

/**
 * Variant `variant_index` of the term at `term_index`. The pointer is
 * borrowed from the result and stays valid until `tw_result_free`;
 * NULL when out of range.
 *
 * # Safety
 * `result` must be a live handle.
 */
const char *tw_result_term_variant(const struct TwResult *result,
                                   size_t term_index,
                                   size_t variant_index);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TERMWEAVER_H */
