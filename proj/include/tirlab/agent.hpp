#pragma once

#include <map>
#include <span>
#include <vector>

#include "tirlab/matrix.hpp"
#include "tirlab/rng.hpp"

namespace tirlab {

enum class PolicyBackend { tabular, linear };

/// One transition with the combined reward already applied.
struct PolicyTransition {
  std::vector<double> s;
  int action = 0;
  double r_total = 0.0;
  std::vector<double> s_next;
  bool done = false;
};

/// One-step Q-learner. The tabular backend keys action values on the exact
/// feature vector, so the agent never touches the hidden state id; the
/// linear backend fits one weight row per action and handles observations
/// that never repeat, such as noise-wrapped features.
class Policy {
public:
  Policy(PolicyBackend backend, std::size_t feature_dim, int action_count, double lr,
         double gamma);

  /// Epsilon-greedy over the current action values; greedy ties break to the
  /// lowest action index.
  int select_action(std::span<const double> features, Rng& rng) const;

  /// One TD(0) backup per transition, applied in batch order.
  void update(std::span<const PolicyTransition> batch);

  std::vector<double> action_values(std::span<const double> features) const;

  void set_epsilon(double eps);
  double epsilon() const { return epsilon_; }
  double gamma() const { return gamma_; }
  int action_count() const { return action_count_; }
  PolicyBackend backend() const { return backend_; }

  bool operator==(const Policy&) const = default;

private:
  double q_value(std::span<const double> features, int action) const;
  double max_q(std::span<const double> features) const;

  PolicyBackend backend_;
  std::size_t feature_dim_;
  int action_count_;
  double lr_;
  double gamma_;
  double epsilon_ = 0.0;

  std::map<std::vector<double>, std::vector<double>> table_;
  Matrix weights_;             // action_count x feature_dim, linear backend
  std::vector<double> bias_;   // per action
};

}  // namespace tirlab
