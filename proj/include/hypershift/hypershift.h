#ifndef HYPERSHIFT_H
#define HYPERSHIFT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HS_API __declspec(dllexport)
#else
#define HS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hs_status {
  HS_OK = 0,
  HS_INVALID_ARGUMENT = 1,
  HS_PRECISION_UNDECIDABLE = 2,
  HS_BUDGET_EXCEEDED = 3,
  HS_OUT_OF_REACH = 4,
  HS_NO_WITNESS_IN_BUDGET = 5,
  HS_DEGENERATE_GAP = 6,
  HS_PATTERN_MISMATCH = 7,
  HS_EMPTY_PATTERN = 8,
  HS_FLOAT_RANGE_EXCEEDED = 9,
  HS_SEARCH_BUDGET_EXCEEDED = 10,
  HS_ZERO_VECTOR = 11,
  HS_PHASE_UNCERTAIN = 12,
  HS_DIVERGENCE_VIOLATED = 13,
  HS_INTERNAL = 14
} hs_status;

typedef struct hs_schedule hs_schedule;

/* Zero / NULL fields take the defaults of the mode. */
typedef struct hs_config {
  /* "faithful" (= "faithful-real"), "complex" (= "faithful-complex"),
     "accelerated", "accelerated-complex" */
  const char* mode;
  /* "lnln", "lnlnln", "ln", "const:C" */
  const char* density;
  int precision_digits;
  uint64_t budget;
  uint64_t k_start;
} hs_config;

typedef struct hs_search {
  uint64_t min_index; /* only k > min_index */
  uint64_t segment_budget;
  unsigned max_step;
} hs_search;

HS_API const char* hs_version(void);
HS_API const char* hs_status_name(hs_status s);
/* Message of the last failed call on this thread. */
HS_API const char* hs_last_error(void);
HS_API void hs_string_free(char* s);

HS_API hs_status hs_schedule_create(const hs_config* cfg, hs_schedule** out);
HS_API void hs_schedule_free(hs_schedule* s);
HS_API hs_status hs_schedule_config_json(hs_schedule* s, char** out);

/* All string results are NUL-terminated and owned by the caller. Where
   noted, *out is also set on failure (a partial report). */
HS_API hs_status hs_targets_csv(uint64_t from, uint64_t to, char** out);
HS_API hs_status hs_entries_csv(hs_schedule* s, uint64_t from, uint64_t to, char** out);
/* Also sets *out on HS_BUDGET_EXCEEDED, with the bracket of the stuck step. */
HS_API hs_status hs_steps_json(hs_schedule* s, unsigned upto_step, char** out);
HS_API hs_status hs_blocks_csv(hs_schedule* s, uint64_t upto_k, char** out);
HS_API hs_status hs_materialize_csv(hs_schedule* s, uint64_t blocks, uint64_t len, char** out);
/* z as "RE,IM" or "MOD@TURNS"; parts are decimals, "e", "pi" or "p/q". */
HS_API hs_status hs_verify_orbit_json(hs_schedule* s, const char* z, uint64_t l,
                                      const hs_search* opt, char** out);
HS_API hs_status hs_verify_covering_json(hs_schedule* s, uint64_t l, const char* value,
                                         const char* delta, const hs_search* opt, char** out);
HS_API hs_status hs_verify_density_csv(hs_schedule* s, const char* const* grid, size_t n,
                                       uint64_t l_max, const hs_search* opt, char** out);
HS_API hs_status hs_divergence_json(hs_schedule* s, uint64_t l, uint64_t horizon, char** out);

#ifdef __cplusplus
}
#endif

#endif
