#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tirlab/agent.hpp"
#include "tirlab/envs.hpp"
#include "tirlab/intrinsic.hpp"

namespace tirlab {

/// Flat key=value experiment description. Every Algorithm-style symbol keeps
/// its short name as the key (n, j, k, lambda, alpha, beta, gamma, U, T, N, H);
/// the remaining keys are spelled out. Unknown keys are errors.
struct ExperimentConfig {
  // environment
  std::string env = "chain";  // chain | grid | noisy-chain | noisy-grid
  std::size_t chain_length = 40;
  std::string grid_map = "builtin:four_room_20";  // builtin:<name> or a map file path
  double noise_sigma = -1.0;  // < 0 resolves to 0.25 for noisy-* envs, 0 otherwise
  std::size_t noise_dims = 4;
  std::size_t episode_cap = 0;  // 0 = env default

  // intrinsic reward engine
  std::string engine = "tir";
  double lambda = 0.001;
  std::string k_mode = "fixed";  // fixed | scheduled
  double k = 2.0;
  double k_ini = 2.0;
  double alpha = 1.0;
  double beta = 1.0;
  std::size_t ensemble_size = 5;
  double engine_scale = 1.0;

  // predictor and snapshot ring
  std::size_t n = 5;
  std::size_t j = 4;
  std::size_t hidden = 64;  // H
  double lr_pred = 1e-3;

  // outer loop budget
  std::size_t rounds = 150;   // U
  std::size_t rollout = 400;  // T
  std::size_t batch = 256;    // N
  std::size_t steps = 0;      // total env-step budget; > 0 overrides U = ceil(steps / T)
  std::size_t buffer_capacity = 0;  // 0 = 50 * T

  // policy
  std::string policy = "auto";  // auto | tabular | linear
  double gamma = 0.99;
  double lr_policy = 0.1;
  double eps_start = 1.0;
  double eps_final = 0.05;
  double eps_frac = 0.1;  // fraction of total steps spent annealing

  // run plumbing
  std::uint64_t seed = 1;
  std::string out = "out";

  /// Parses one key. Throws on unknown keys or unparsable values.
  void set(const std::string& key, const std::string& value);

  /// Current value of one key, formatted as set() would accept it.
  std::string get(const std::string& key) const;

  static std::vector<std::string> keys();

  /// Reads a key=value file ('#' starts a comment) into *this.
  void load(const std::string& path);

  void validate() const;

  // Resolved views consumed by the harness.
  EnvSpec env_spec() const;
  RewardEngineConfig engine_config() const;
  PolicyBackend resolved_backend() const;
  double resolved_noise_sigma() const;
  std::size_t resolved_rounds() const;
  std::size_t resolved_buffer_capacity() const;
};

}  // namespace tirlab
