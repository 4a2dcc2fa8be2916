/* snippetforge: C interface to the snippet-alignment toolchain.
 *
 * All functions return sf_code; on any non-SF_OK result sf_last_error()
 * carries a human-readable message for the calling thread. Strings handed
 * back through char** out-parameters are heap copies owned by the caller
 * and must be released with sf_string_free().
 */
#ifndef SNIPPETFORGE_H
#define SNIPPETFORGE_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sf_code {
  SF_OK = 0,
  SF_ERR_INVALID_ARGUMENT = 1,
  SF_ERR_IO = 2,
  SF_ERR_PARSE = 3,
  SF_ERR_BACKEND = 4,
  SF_ERR_INTERNAL = 5
} sf_code;

const char* sf_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* sf_last_error(void);

void sf_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Corpus augmentation                                                  */
/* ------------------------------------------------------------------ */

typedef struct sf_augment_options sf_augment_options;

sf_augment_options* sf_augment_options_new(void);
void sf_augment_options_free(sf_augment_options* opts);

/* Non-zero selects the deterministic offline mock backend. */
sf_code sf_augment_options_set_mock(sf_augment_options* opts, int use_mock);
/* Chat-completion endpoint, e.g. "https://api.example.com/v1/chat/completions". */
sf_code sf_augment_options_set_endpoint(sf_augment_options* opts, const char* url);
sf_code sf_augment_options_set_api_key(sf_augment_options* opts, const char* key);
sf_code sf_augment_options_set_model(sf_augment_options* opts, const char* model_name);
/* Response cache directory; enables resuming interrupted runs. */
sf_code sf_augment_options_set_cache_dir(sf_augment_options* opts, const char* dir);
/* Directory with prompt template overrides (stage1_user.txt, ...). */
sf_code sf_augment_options_set_prompt_dir(sf_augment_options* opts, const char* dir);
sf_code sf_augment_options_set_workers(sf_augment_options* opts, int workers);
/* Non-zero emits both orientations of every snippet pair. */
sf_code sf_augment_options_set_ordered_pairs(sf_augment_options* opts, int ordered);
/* Pivot language whose segmentation the others follow; default "python". */
sf_code sf_augment_options_set_pivot(sf_augment_options* opts, const char* language);
/* JSON overriding the per-language usefulness filters. */
sf_code sf_augment_options_set_filter_config_json(sf_augment_options* opts,
                                                  const char* json_text);
sf_code sf_augment_options_set_max_retries(sf_augment_options* opts, int retries);
sf_code sf_augment_options_set_max_concurrent(sf_augment_options* opts, int limit);

/* Runs comment insertion, rewriting, and split-and-match over the
 * program-aligned JSONL at pa_path; writes snippet pairs to sa_out_path
 * and returns the run report as JSON. */
sf_code sf_augment_run(const sf_augment_options* opts, const char* pa_path,
                       const char* sa_out_path, char** report_json_out);

/* ------------------------------------------------------------------ */
/* Inspection                                                           */
/* ------------------------------------------------------------------ */

/* Record counts and per-language(-pair) breakdown; the file's granularity
 * (program- or snippet-aligned) is detected from its fields. */
sf_code sf_corpus_stats(const char* corpus_path, char** stats_json_out);

/* Re-checks an existing snippet-aligned file: schema validity and the
 * usefulness filters. filter_config_json may be NULL for defaults. */
sf_code sf_validate_sa(const char* sa_path, const char* filter_config_json,
                       char** report_json_out);

/* ------------------------------------------------------------------ */
/* Evaluation                                                           */
/* ------------------------------------------------------------------ */

/* Unbiased pass@k estimate from n samples with c passing. */
sf_code sf_pass_at_k(int n, int c, int k, double* out);

/* Aggregates an execution-verdict JSONL into a pass@k table. Either out
 * pointer may be NULL if that rendering is not needed. */
sf_code sf_eval_verdicts(const char* verdicts_path, int k, char** table_json_out,
                         char** table_text_out);

/* ------------------------------------------------------------------ */
/* Training schedules                                                   */
/* ------------------------------------------------------------------ */

/* Manifest for a stage order such as "PS"; overrides_json may be NULL. */
sf_code sf_schedule_plan(const char* order, const char* pa_path, const char* sa_path,
                         const char* overrides_json, char** manifest_json_out);

/* JSON array of every stage order with up to max_total_epochs letters. */
sf_code sf_schedule_orders(int max_total_epochs, char** orders_json_out);

#ifdef __cplusplus
}
#endif

#endif /* SNIPPETFORGE_H */
