/* trendmine C API. All handles are opaque; every call that can fail returns a
 * tm_status and leaves a message for tm_last_error() on the calling thread. */
#ifndef TRENDMINE_H
#define TRENDMINE_H

#include <stddef.h>

#if defined(_WIN32)
#define TM_API __declspec(dllexport)
#else
#define TM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tm_status {
  TM_OK = 0,
  TM_E_INVALID_ARGUMENT,
  TM_E_MALFORMED_RECORD,
  TM_E_EMPTY_TEXT,
  TM_E_COORDINATE_OUT_OF_RANGE,
  TM_E_MISSING_LABEL_CLASS,
  TM_E_DUPLICATE_CODE,
  TM_E_EMPTY_CORPUS,
  TM_E_TOPIC_INDEX_OUT_OF_RANGE,
  TM_E_SERIES_TOO_SHORT,
  TM_E_EMPTY_SAMPLE,
  TM_E_NO_OVERLAP,
  TM_E_CODE_MISMATCH,
  TM_E_INVALID_SPEC,
  TM_E_IO,
  TM_E_BUFFER_TOO_SMALL,
  TM_E_INTERNAL
} tm_status;

/* polarity values */
#define TM_NEGATIVE (-1)
#define TM_NEUTRAL 0
#define TM_POSITIVE 1

/* state winners */
#define TM_WINNER_B (-1)
#define TM_WINNER_UNDECIDED 0
#define TM_WINNER_A 1

typedef struct tm_config tm_config;
typedef struct tm_model tm_model;
typedef struct tm_geo tm_geo;

TM_API const char* tm_version(void);
TM_API const char* tm_status_name(tm_status status);
/* Message of the last failed call on this thread; "" if none. */
TM_API const char* tm_last_error(void);
/* Process exit code for a status: 0 ok, 2 I/O, 1 otherwise. */
TM_API int tm_exit_code(tm_status status);

/* ---- run configuration and batch commands ---- */
TM_API tm_status tm_config_new(tm_config** out);
TM_API void tm_config_free(tm_config* cfg);
/* Keys match the CLI flags (in, polls, states, labeled, out, seed,
 * sample-size, k, iters, alpha, beta, format, ...). Later calls win. */
TM_API tm_status tm_config_set(tm_config* cfg, const char* key, const char* value);
TM_API tm_status tm_config_load_file(tm_config* cfg, const char* path);
/* Writes the 64-char hex config hash plus NUL; len must be >= 65. */
TM_API tm_status tm_config_hash(const tm_config* cfg, char* buf, size_t len);

/* NULL past the end. */
TM_API const char* tm_command_name(size_t index);
/* Runs one batch command; progress lines go to stderr. */
TM_API tm_status tm_run_command(const tm_config* cfg, const char* command);
/* Blocks serving run_dir read-only over HTTP. */
TM_API tm_status tm_serve(const char* run_dir, const char* host, int port);

/* ---- sentiment model ---- */
TM_API tm_status tm_model_train_file(const char* labeled_path, tm_model** out);
TM_API tm_status tm_model_load(const char* path, tm_model** out);
TM_API tm_status tm_model_save(const tm_model* model, const char* path);
TM_API void tm_model_free(tm_model* model);
TM_API tm_status tm_model_classify(const tm_model* model, const char* text, int* polarity);
/* out[0..2] = log posterior for neutral, negative, positive. */
TM_API tm_status tm_model_log_posterior(const tm_model* model, const char* text, double out[3]);

/* ---- state lookup ---- */
TM_API tm_status tm_geo_new_default(tm_geo** out);
TM_API tm_status tm_geo_load(const char* states_path, tm_geo** out);
TM_API void tm_geo_free(tm_geo* geo);
/* code receives the state code plus NUL; len >= 3. */
TM_API tm_status tm_geo_nearest(const tm_geo* geo, double lat, double lon, char* code, size_t len);
TM_API tm_status tm_call_state(unsigned long long pos_a, unsigned long long neg_a, unsigned long long pos_b,
                               unsigned long long neg_b, int* winner);

/* ---- text ---- */
/* Default cue/stop lists. On TM_E_BUFFER_TOO_SMALL, *needed holds the
 * required size including NUL. needed may be NULL. */
TM_API tm_status tm_mark_negation(const char* text, char* buf, size_t len, size_t* needed);
/* Tokens joined by single spaces. */
TM_API tm_status tm_preprocess(const char* text, char* buf, size_t len, size_t* needed);

#ifdef __cplusplus
}
#endif

#endif
