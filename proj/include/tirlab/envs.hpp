#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tirlab/rng.hpp"

namespace tirlab {

enum class EnvKind { chain, grid };

/// Sparse-reward toy environment description. Reward is 1 exactly on the
/// transition that reaches the goal, 0 everywhere else.
struct EnvSpec {
  EnvKind kind = EnvKind::chain;
  std::size_t chain_length = 40;
  std::string map_text;     // grid only: '#' wall, '.' floor, 'S' start, 'G' goal
  double noise_sigma = 0.0;
  std::size_t noise_dims = 4;
  bool noise_append = true;  // append distractor dims; false perturbs existing dims
  std::size_t episode_cap = 0;  // 0 resolves to 200 (chain) / 500 (grid)

  std::size_t resolved_episode_cap() const;
  void validate() const;
};

struct Observation {
  std::vector<double> features;
  int raw_state = 0;  // hidden from the agent, used by coverage metrics
};

/// Named built-in grid layouts ("four_room_20").
std::string builtin_map(const std::string& name);

/// Appends (or perturbs, when append is false) zero-mean Gaussian draws with
/// standard deviation sigma. sigma = 0 leaves the features unchanged.
void add_noise(std::vector<double>& features, double sigma, std::size_t dims, bool append,
               Rng& stream);

/// Deterministic environment core plus an optional seeded noise wrapper.
/// The core consumes no randomness; only the noise stream does.
class Environment {
public:
  explicit Environment(EnvSpec spec);

  /// Moves the agent to the start and reseeds the noise stream.
  Observation reset(std::uint64_t seed);

  /// Moves the agent to the start, noise stream keeps running.
  Observation reset();

  struct StepResult {
    Observation obs;
    double reward = 0.0;
    bool done = false;
  };

  StepResult step(int action);

  /// Fixed per-state encoding: normalized coordinates plus a one-hot coarse
  /// cell block, all entries in [-1, 1], injective over reachable states.
  /// Noise dims are not included; they belong to the wrapper.
  std::vector<double> featurize(int raw_state) const;

  std::size_t feature_dim() const;      // includes appended noise dims
  std::size_t base_feature_dim() const;
  int action_count() const;
  std::size_t state_count() const;      // reachable states
  const EnvSpec& spec() const { return spec_; }

private:
  Observation observe();
  bool grid_wall(int x, int y) const;

  EnvSpec spec_;
  Rng noise_rng_{0};
  int pos_ = 0;
  std::size_t steps_in_episode_ = 0;

  // grid geometry, parsed once
  int width_ = 0;
  int height_ = 0;
  std::vector<bool> wall_;
  int start_ = 0;
  int goal_ = 0;
};

}  // namespace tirlab
