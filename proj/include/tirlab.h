#ifndef TIRLAB_H
#define TIRLAB_H

/* C interface to the tirlab core. Every entry point that can fail returns a
 * tirlab_status; the message for the most recent failure on the calling
 * thread is available from tirlab_last_error(). Objects returned through
 * out-parameters are owned by the caller and released with the matching
 * _free function. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tirlab_status {
  TIRLAB_OK = 0,
  TIRLAB_INVALID_ARGUMENT = 1,
  TIRLAB_DIMENSION_MISMATCH = 2,
  TIRLAB_NO_CONVERGENCE = 3,
  TIRLAB_IO = 4,
  TIRLAB_INTERNAL = 5
} tirlab_status;

typedef struct tirlab_config tirlab_config;
typedef struct tirlab_run_log tirlab_run_log;

/* One run-log row. Mirrors the CSV schema. */
typedef struct tirlab_record {
  uint64_t round;
  uint64_t steps;
  double ext_return;
  double mean_int_reward;
  double pred_loss;
  double k;
  uint64_t coverage;
  double wallclock_ms;
} tirlab_record;

const char* tirlab_version(void);
const char* tirlab_status_name(tirlab_status status);

/* Message of the last failing call on this thread; empty string if none. */
const char* tirlab_last_error(void);

/* Configuration: defaults on creation, then key=value mutation. */
tirlab_config* tirlab_config_new(void);
void tirlab_config_free(tirlab_config* config);
tirlab_status tirlab_config_load(tirlab_config* config, const char* path);
tirlab_status tirlab_config_set(tirlab_config* config, const char* key, const char* value);
/* Writes the value into buf (NUL-terminated, truncated to buf_size). */
tirlab_status tirlab_config_get(const tirlab_config* config, const char* key, char* buf,
                                size_t buf_size);

/* Runs one experiment; *out_log is set on success. */
tirlab_status tirlab_run(const tirlab_config* config, tirlab_run_log** out_log);

size_t tirlab_log_size(const tirlab_run_log* log);
tirlab_status tirlab_log_record(const tirlab_run_log* log, size_t index, tirlab_record* out);
tirlab_status tirlab_log_total_ext_return(const tirlab_run_log* log, double* out);
tirlab_status tirlab_log_write_csv(const tirlab_run_log* log, const char* path);
void tirlab_log_free(tirlab_run_log* log);

/* Cross product of engines x seeds (both comma-separated lists); per-run
 * CSVs plus summary.csv and cells.csv land in out_dir. */
tirlab_status tirlab_compare(const tirlab_config* base, const char* engines,
                             const char* seeds, const char* out_dir);

/* (agent - random) / (human - random). */
tirlab_status tirlab_hns(double agent_score, double random_score, double human_score,
                         double* out);

/* Norm kernels over a row-major rows x cols matrix. */
tirlab_status tirlab_nuclear_norm(const double* data, size_t rows, size_t cols, double* out);
tirlab_status tirlab_frobenius_norm(const double* data, size_t rows, size_t cols, double* out);
tirlab_status tirlab_weighted_nuclear_norm(const double* data, size_t rows, size_t cols, double k,
                                           double* out);

/* Exponent decay from k_ini at round 0 to 1 at round total_rounds. */
tirlab_status tirlab_k_schedule(long round, long total_rounds, double k_ini, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TIRLAB_H */
