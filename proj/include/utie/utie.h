/*
 * utie: unified text-image embedding transforms and demographic bias
 * evaluation over pre-extracted vision-language face embeddings.
 *
 * Every function returns a utie_status. On failure the thread-local message
 * from utie_last_error() describes the problem. Handles are opaque and owned
 * by the caller; release them with the matching *_free function. Strings
 * returned through char** out-parameters are released with utie_string_free.
 */
#ifndef UTIE_UTIE_H_
#define UTIE_UTIE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(UTIE_BUILDING_LIBRARY)
#define UTIE_API __declspec(dllexport)
#else
#define UTIE_API __declspec(dllimport)
#endif
#else
#define UTIE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum utie_status {
  UTIE_OK = 0,
  /* I/O and format errors */
  UTIE_ERR_IO = 1,
  UTIE_ERR_MALFORMED_HEADER = 2,
  UTIE_ERR_UNSUPPORTED_DESCRIPTOR = 3,
  UTIE_ERR_SHAPE = 4,
  UTIE_ERR_MALFORMED_RECORD = 5,
  /* validation errors */
  UTIE_ERR_DUPLICATE_ID = 10,
  UTIE_ERR_ROW_OUT_OF_RANGE = 11,
  UTIE_ERR_ROW_UNCOVERED = 12,
  UTIE_ERR_ZERO_NORM_EMBEDDING = 13,
  UTIE_ERR_EMPTY_FIELD = 14,
  UTIE_ERR_LABEL_COUNT_MISMATCH = 15,
  UTIE_ERR_DUPLICATE_LABEL = 16,
  UTIE_ERR_DANGLING_PAIR_ID = 17,
  UTIE_ERR_BAD_LABEL = 18,
  UTIE_ERR_MIXED_FOLD_PRESENCE = 19,
  UTIE_ERR_NON_CONTIGUOUS_FOLDS = 20,
  UTIE_ERR_SELF_PAIR = 21,
  UTIE_ERR_DUPLICATE_ROW = 22,
  /* numeric and domain errors */
  UTIE_ERR_NON_FINITE_INPUT = 30,
  UTIE_ERR_DIMENSION_MISMATCH = 31,
  UTIE_ERR_EMPTY_SET = 32,
  UTIE_ERR_INDEX_OUT_OF_RANGE = 33,
  UTIE_ERR_DEGENERATE_ANCHOR_SET = 34,
  UTIE_ERR_MISSING_PLACEHOLDER = 35,
  UTIE_ERR_MULTIPLE_PLACEHOLDERS = 36,
  UTIE_ERR_UNKNOWN_GROUP_LABEL = 37,
  UTIE_ERR_DEGENERATE_LABELS = 38,
  UTIE_ERR_FOLD_TOO_SMALL = 39,
  UTIE_ERR_EMPTY_INPUT = 40,
  UTIE_ERR_NEED_TWO_GROUPS = 41,
  UTIE_ERR_PERFECT_GROUP = 42,
  UTIE_ERR_CONFIG_INVALID = 43,
  UTIE_ERR_INVALID_ARGUMENT = 44,
  UTIE_ERR_INTERNAL = 99
} utie_status;

typedef enum utie_mode {
  UTIE_MODE_IE = 0,     /* unit-normalized image embedding */
  UTIE_MODE_UTIE = 1,   /* I + mean of non-predicted anchors */
  UTIE_MODE_IE_PTE = 2  /* I + predicted anchor */
} utie_mode;

typedef struct utie_bundle utie_bundle;
typedef struct utie_anchors utie_anchors;
typedef struct utie_pairs utie_pairs;

/* Message for the last failed call on this thread ("" if none). */
UTIE_API const char* utie_last_error(void);
/* Stable name such as "DuplicateId". */
UTIE_API const char* utie_status_name(utie_status status);
/* Nonzero for I/O and format errors, zero for validation/domain errors. */
UTIE_API int utie_status_is_format_error(utie_status status);
UTIE_API void utie_string_free(char* str);

/* Warnings (e.g. float64 narrowing) go to stderr unless a handler is set.
 * Passing NULL restores the default. */
typedef void (*utie_warning_fn)(const char* message, void* user);
UTIE_API void utie_set_warning_handler(utie_warning_fn fn, void* user);

/* Mode names: "ie", "utie", "ie_pte" (also "ie+pte"). */
UTIE_API utie_status utie_mode_parse(const char* text, utie_mode* out);
UTIE_API const char* utie_mode_name(utie_mode mode);

/* Bundles: directory with embeddings.npy + manifest.jsonl. */
UTIE_API utie_status utie_bundle_load(const char* dir, utie_bundle** out);
UTIE_API utie_status utie_bundle_save(const utie_bundle* bundle, const char* dir);
UTIE_API size_t utie_bundle_rows(const utie_bundle* bundle);
UTIE_API size_t utie_bundle_dim(const utie_bundle* bundle);
/* Copies row `row` into `out`, which must hold utie_bundle_dim() floats. */
UTIE_API utie_status utie_bundle_row(const utie_bundle* bundle, size_t row, float* out);
UTIE_API void utie_bundle_free(utie_bundle* bundle);

/* Anchor sets: directory with anchors.npy + anchors.json. */
UTIE_API utie_status utie_anchors_load(const char* dir, utie_anchors** out);
UTIE_API size_t utie_anchors_count(const utie_anchors* anchors);
UTIE_API void utie_anchors_free(utie_anchors* anchors);

/* Pairs CSV (id_a,id_b,label[,fold]); ids are resolved against `bundle`. */
UTIE_API utie_status utie_pairs_load(const char* path, const utie_bundle* bundle, utie_pairs** out);
UTIE_API size_t utie_pairs_count(const utie_pairs* pairs);
UTIE_API void utie_pairs_free(utie_pairs* pairs);

/* Renders a prompt template with a single {label} placeholder. */
UTIE_API utie_status utie_render_prompt(const char* prompt_template, const char* label, char** out);

/* Per-row transform. `anchors` may be NULL for UTIE_MODE_IE. With
 * normalize == 0 the raw image and text vectors are added unnormalized. */
UTIE_API utie_status utie_transform(const utie_bundle* bundle, const utie_anchors* anchors, utie_mode mode,
                                    int normalize, utie_bundle** out);

/* Zero-shot demographic prediction accuracy per group, as JSON. */
UTIE_API utie_status utie_classify(const utie_bundle* bundle, const utie_anchors* anchors, char** json_out);

/* k-fold verification accuracy per group, as JSON. All pair sets are pooled
 * and partitioned by the manifest group of each pair's first id. */
UTIE_API utie_status utie_verify(const utie_bundle* bundle, const utie_anchors* anchors,
                                 const utie_pairs* const* pair_sets, size_t n_pair_sets, utie_mode mode,
                                 int normalize, char** json_out);

/* Mean/STD/SER over per-group accuracies (percent). Either output may be NULL. */
UTIE_API utie_status utie_bias_report(const char* const* groups, const double* accuracies, size_t n,
                                      const char* approach, const char* representation, char** json_out,
                                      char** markdown_out);

/* Writes the group x anchor mean-cosine CSV to csv_path and, when gap_json_out
 * is non-NULL, returns the per-group ambiguity gap as JSON. */
UTIE_API utie_status utie_diagnose(const utie_bundle* bundle, const utie_anchors* anchors, utie_mode mode,
                                   int normalize, const char* csv_path, char** gap_json_out);

typedef struct utie_synth_config {
  size_t n_groups;
  size_t ids_per_group;
  size_t images_per_id;
  size_t dim;
  uint64_t seed;
  double group_strength;
  double identity_strength;
  double noise_sigma;
  const double* noise_scale; /* per-group multipliers, or NULL */
  size_t noise_scale_len;
} utie_synth_config;

/* Fills `config` with the defaults (4 groups, 20 ids, 5 images, dim 64,
 * seed 7, strengths 0.6/0.7, sigma 0.1). */
UTIE_API void utie_synth_config_default(utie_synth_config* config);

/* Writes out_dir/bundle, out_dir/anchors and out_dir/pairs_<group>.csv. */
UTIE_API utie_status utie_synth_write(const utie_synth_config* config, const char* out_dir);

/* Runs the embedded oracle suite. *report_out receives one line per check;
 * *failures receives the number of failed checks. */
UTIE_API utie_status utie_selftest(char** report_out, size_t* failures);

#ifdef __cplusplus
}
#endif

#endif /* UTIE_UTIE_H_ */
