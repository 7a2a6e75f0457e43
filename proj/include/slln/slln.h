#ifndef SLLN_H
#define SLLN_H

/* C interface to the sub-linear expectation engine. All entry points return
 * a status code; 0 is success and nonzero values match the process exit-code
 * taxonomy below. String outputs are NUL-terminated and truncated to the
 * caller's buffer. On failure, slln_last_error() describes the most recent
 * failing call on the calling thread. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SLLN_OK 0
#define SLLN_PARSE_ERROR 2
#define SLLN_PRECONDITION_ERROR 3
#define SLLN_RESOURCE_CAP 4
#define SLLN_ASSERTION_FAILED 5
#define SLLN_IO_ERROR 6
#define SLLN_INTERNAL_ERROR 70

typedef struct slln_model slln_model;

const char* slln_version(void);

/* Message for the last failing call on this thread; empty if none. */
const char* slln_last_error(void);

/* model_json is either {"fixture": "<name>"} or a model object
 * {"kind": "iid"|"moving_window", "m": ..., "window": {...}, "laws": [...]}. */
int slln_model_create(const char* model_json, slln_model** out);
void slln_model_destroy(slln_model* model);
int slln_model_describe(const slln_model* model, char* buf, size_t cap);

/* functional_json follows the registered payoff vocabulary, e.g.
 * {"kind": "sum", "n": 3}. */
int slln_upper_expectation(const slln_model* model, const char* functional_json,
                           double* out);
int slln_lower_expectation(const slln_model* model, const char* functional_json,
                           double* out);

/* event_json is {"functional": {...}, "cmp": "ge|gt|le|lt|eq", "value": v}. */
int slln_upper_capacity(const slln_model* model, const char* event_json,
                        double* out);
int slln_lower_capacity(const slln_model* model, const char* event_json,
                        double* out);

/* Runs one experiment from a config JSON and writes its CSV artifact.
 * subcommand may be NULL to use the config's "experiment" field; seed may be
 * NULL to use the config's seed; out_dir may be NULL to use the config's
 * output directory. summary receives printable LF-joined report lines.
 * Returns SLLN_ASSERTION_FAILED when the experiment's pass rule fails. */
int slln_run_experiment(const char* config_json, const char* subcommand,
                        const uint64_t* seed, const char* out_dir, char* summary,
                        size_t summary_cap);

/* LF-joined names of the built-in fixtures. */
int slln_list_fixtures(char* buf, size_t cap);

#ifdef __cplusplus
}
#endif

#endif /* SLLN_H */
