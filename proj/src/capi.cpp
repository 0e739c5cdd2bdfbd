#include "tirlab.h"

#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "tirlab/config.hpp"
#include "tirlab/error.hpp"
#include "tirlab/harness.hpp"
#include "tirlab/linalg.hpp"
#include "tirlab/matrix.hpp"

struct tirlab_config {
  tirlab::ExperimentConfig impl;
};

struct tirlab_run_log {
  tirlab::RunLog impl;
};

namespace {

thread_local std::string g_last_error;

tirlab_status to_status(tirlab::Errc code) {
  switch (code) {
    case tirlab::Errc::invalid_argument: return TIRLAB_INVALID_ARGUMENT;
    case tirlab::Errc::dimension_mismatch: return TIRLAB_DIMENSION_MISMATCH;
    case tirlab::Errc::no_convergence: return TIRLAB_NO_CONVERGENCE;
    case tirlab::Errc::io: return TIRLAB_IO;
    case tirlab::Errc::internal: return TIRLAB_INTERNAL;
  }
  return TIRLAB_INTERNAL;
}

/* Runs fn, routing exceptions into status codes and g_last_error. */
template <typename Fn>
tirlab_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return TIRLAB_OK;
  } catch (const tirlab::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TIRLAB_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return TIRLAB_INTERNAL;
  }
}

tirlab_status fail_arg(const char* message) {
  g_last_error = message;
  return TIRLAB_INVALID_ARGUMENT;
}

tirlab::Matrix make_matrix(const double* data, size_t rows, size_t cols) {
  tirlab::require(data != nullptr, tirlab::Errc::invalid_argument, "matrix data is null");
  tirlab::Matrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) m(r, c) = data[r * cols + c];
  return m;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const std::size_t end = text.find(',', begin);
    const std::string part =
        text.substr(begin, end == std::string::npos ? std::string::npos : end - begin);
    if (!part.empty()) parts.push_back(part);
    if (end == std::string::npos) break;
    begin = end + 1;
  }
  return parts;
}

std::uint64_t parse_seed(const std::string& text) {
  tirlab::require(!text.empty() && text.find_first_not_of("0123456789") == std::string::npos,
                  tirlab::Errc::invalid_argument,
                  "seed list: expected a non-negative integer, got '" + text + "'");
  return std::stoull(text);
}

}  // namespace

extern "C" {

const char* tirlab_version(void) { return "0.1.0"; }

const char* tirlab_status_name(tirlab_status status) {
  switch (status) {
    case TIRLAB_OK: return "ok";
    case TIRLAB_INVALID_ARGUMENT: return "invalid_argument";
    case TIRLAB_DIMENSION_MISMATCH: return "dimension_mismatch";
    case TIRLAB_NO_CONVERGENCE: return "no_convergence";
    case TIRLAB_IO: return "io";
    case TIRLAB_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* tirlab_last_error(void) { return g_last_error.c_str(); }

tirlab_config* tirlab_config_new(void) {
  try {
    return new tirlab_config{};
  } catch (...) {
    return nullptr;
  }
}

void tirlab_config_free(tirlab_config* config) { delete config; }

tirlab_status tirlab_config_load(tirlab_config* config, const char* path) {
  if (config == nullptr || path == nullptr) return fail_arg("config and path must be non-null");
  return guarded([&] { config->impl.load(path); });
}

tirlab_status tirlab_config_set(tirlab_config* config, const char* key, const char* value) {
  if (config == nullptr || key == nullptr || value == nullptr)
    return fail_arg("config, key and value must be non-null");
  return guarded([&] { config->impl.set(key, value); });
}

tirlab_status tirlab_config_get(const tirlab_config* config, const char* key, char* buf,
                                size_t buf_size) {
  if (config == nullptr || key == nullptr || buf == nullptr || buf_size == 0)
    return fail_arg("config, key and a non-empty buffer are required");
  return guarded([&] {
    const std::string value = config->impl.get(key);
    const size_t n = value.size() < buf_size - 1 ? value.size() : buf_size - 1;
    std::memcpy(buf, value.data(), n);
    buf[n] = '\0';
  });
}

tirlab_status tirlab_run(const tirlab_config* config, tirlab_run_log** out_log) {
  if (config == nullptr || out_log == nullptr)
    return fail_arg("config and out_log must be non-null");
  *out_log = nullptr;
  return guarded([&] {
    auto log = std::make_unique<tirlab_run_log>();
    log->impl = tirlab::run_experiment(config->impl);
    *out_log = log.release();
  });
}

size_t tirlab_log_size(const tirlab_run_log* log) {
  return log == nullptr ? 0 : log->impl.records.size();
}

tirlab_status tirlab_log_record(const tirlab_run_log* log, size_t index, tirlab_record* out) {
  if (log == nullptr || out == nullptr) return fail_arg("log and out must be non-null");
  if (index >= log->impl.records.size()) return fail_arg("record index out of range");
  const tirlab::RunRecord& r = log->impl.records[index];
  out->round = r.round;
  out->steps = r.steps;
  out->ext_return = r.ext_return;
  out->mean_int_reward = r.mean_int_reward;
  out->pred_loss = r.pred_loss;
  out->k = r.k;
  out->coverage = r.coverage;
  out->wallclock_ms = r.wallclock_ms;
  g_last_error.clear();
  return TIRLAB_OK;
}

tirlab_status tirlab_log_total_ext_return(const tirlab_run_log* log, double* out) {
  if (log == nullptr || out == nullptr) return fail_arg("log and out must be non-null");
  *out = log->impl.total_ext_return();
  g_last_error.clear();
  return TIRLAB_OK;
}

tirlab_status tirlab_log_write_csv(const tirlab_run_log* log, const char* path) {
  if (log == nullptr || path == nullptr) return fail_arg("log and path must be non-null");
  return guarded([&] { tirlab::emit_csv(log->impl, path); });
}

void tirlab_log_free(tirlab_run_log* log) { delete log; }

tirlab_status tirlab_compare(const tirlab_config* base, const char* engines, const char* seeds,
                             const char* out_dir) {
  if (base == nullptr || engines == nullptr || seeds == nullptr || out_dir == nullptr)
    return fail_arg("base, engines, seeds and out_dir must be non-null");
  return guarded([&] {
    const std::vector<std::string> engine_list = split_list(engines);
    std::vector<std::uint64_t> seed_list;
    for (const std::string& s : split_list(seeds)) seed_list.push_back(parse_seed(s));
    tirlab::compare_engines(base->impl, engine_list, seed_list, out_dir);
  });
}

tirlab_status tirlab_hns(double agent_score, double random_score, double human_score,
                         double* out) {
  if (out == nullptr) return fail_arg("out must be non-null");
  return guarded([&] { *out = tirlab::hns(agent_score, random_score, human_score); });
}

tirlab_status tirlab_nuclear_norm(const double* data, size_t rows, size_t cols, double* out) {
  if (out == nullptr) return fail_arg("out must be non-null");
  return guarded([&] { *out = tirlab::nuclear_norm(make_matrix(data, rows, cols)); });
}

tirlab_status tirlab_frobenius_norm(const double* data, size_t rows, size_t cols, double* out) {
  if (out == nullptr) return fail_arg("out must be non-null");
  return guarded([&] { *out = tirlab::frobenius_norm(make_matrix(data, rows, cols)); });
}

tirlab_status tirlab_weighted_nuclear_norm(const double* data, size_t rows, size_t cols, double k,
                                           double* out) {
  if (out == nullptr) return fail_arg("out must be non-null");
  return guarded([&] { *out = tirlab::weighted_nuclear_norm(make_matrix(data, rows, cols), k); });
}

tirlab_status tirlab_k_schedule(long round, long total_rounds, double k_ini, double* out) {
  if (out == nullptr) return fail_arg("out must be non-null");
  return guarded([&] { *out = tirlab::k_schedule(round, total_rounds, k_ini); });
}

}  // extern "C"
