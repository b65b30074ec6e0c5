/* fuzzlint - vague-wording detection with a correction memory.
 *
 * Plain C interface over the engine.  All handles are opaque; every
 * function that can fail returns fzl_status and leaves a message readable
 * through fzl_config_error / fzl_engine_error on the same handle.  Strings
 * returned through char** out-parameters are heap-allocated; release them
 * with fzl_string_free.
 */

#ifndef FUZZLINT_H
#define FUZZLINT_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fzl_status {
  FZL_OK = 0,
  FZL_ERR_INVALID_ARG = 1, /* null handle, bad key, bad value */
  FZL_ERR_IO = 2,          /* file unreadable or unwritable */
  FZL_ERR_PARSE = 3,       /* malformed resource, store or pattern file */
  FZL_ERR_STATE = 4,       /* writing through a read-only engine */
  FZL_ERR_LOCKED = 5,      /* another process holds the store lock */
  FZL_ERR_NOT_FOUND = 6,   /* unknown deactivation id */
  FZL_ERR_MISMATCH = 7     /* original/corrected texts do not pair up */
} fzl_status;

typedef struct fzl_config fzl_config;
typedef struct fzl_engine fzl_engine;

const char* fzl_version(void);

/* ---- configuration ---------------------------------------------------- */

fzl_config* fzl_config_new(void);
void fzl_config_free(fzl_config* cfg);

/* Keys: deactivation_threshold, global_threshold, context_match_k,
 * context_size, case2_content_ratio, case4_edit_ratio, lexicon, words,
 * stopwords, synonyms, patterns, store, stable_output. */
fzl_status fzl_config_set(fzl_config* cfg, const char* key, const char* value);

/* key=value lines; '#' starts a comment. */
fzl_status fzl_config_load_file(fzl_config* cfg, const char* path);

/* Message of the last failed call on this handle; never NULL. */
const char* fzl_config_error(const fzl_config* cfg);

/* ---- engine ----------------------------------------------------------- */

/* Loads resources and the store named by the configuration.  writable != 0
 * takes an advisory lock (<store>.lock) and enables learn, mine-correct,
 * induce, validate and save.  On failure returns NULL; *status and,
 * when errmsg is non-NULL, *errmsg (heap-allocated) say why. */
fzl_engine* fzl_engine_open(const fzl_config* cfg, int writable, fzl_status* status,
                            char** errmsg);
void fzl_engine_close(fzl_engine* eng);

const char* fzl_engine_error(const fzl_engine* eng);

/* Warnings collected while opening (configuration drift, pattern
 * overrides).  Index from 0; out of range yields NULL. */
int fzl_engine_warning_count(const fzl_engine* eng);
const char* fzl_engine_warning(const fzl_engine* eng, int index);

/* ---- operations -------------------------------------------------------- */

/* Scans text.  annotated receives the text with <fuzzy id=N sev=S> marks,
 * report a line-oriented alert listing.  alerts counts all live alerts,
 * at_or_above those with severity >= min_severity.  Any out-pointer may be
 * NULL when the caller does not need that value. */
fzl_status fzl_detect(fzl_engine* eng, const char* doc_id, const char* text, int min_severity,
                      char** annotated, char** report, int* alerts, int* at_or_above,
                      int* max_severity);

/* Pairs the original text with the writer's corrected version sentence by
 * sentence and appends one memory record per alerted occurrence. */
fzl_status fzl_learn(fzl_engine* eng, const char* doc_id, const char* original,
                     const char* corrected, const char* writer, char** summary);

/* Harvests quantity expressions from alert-free sentences. */
fzl_status fzl_mine_correct(fzl_engine* eng, const char* doc_id, const char* text,
                            char** summary);

/* Recomputes deactivations, recommendations and raw corrections from the
 * stored records. */
fzl_status fzl_induce(fzl_engine* eng, char** summary);

/* Marks an induced deactivation as reviewed so it starts suppressing. */
fzl_status fzl_validate(fzl_engine* eng, const char* deactivation_id, char** summary);

/* Rewrite proposals with ranked fillers for every live alert in text. */
fzl_status fzl_suggest(fzl_engine* eng, const char* doc_id, const char* text, char** report);

/* Corpus overview: per-item counts, alert density, outcome distribution,
 * deactivations and top recommendations.  docs/texts are parallel arrays
 * of length count; count may be 0. */
fzl_status fzl_report(fzl_engine* eng, const char* const* doc_ids, const char* const* texts,
                      int count, char** report);

/* Persists the store and derived tables (atomic rename). */
fzl_status fzl_save(fzl_engine* eng);

void fzl_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* FUZZLINT_H */
