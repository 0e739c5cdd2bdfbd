#include "tirlab/agent.hpp"

#include <algorithm>
#include <cmath>

#include "tirlab/error.hpp"

namespace tirlab {

namespace {

// Clamp before the Matrix/vector members are built so that invalid sizes fall
// through to the require() checks below instead of a giant allocation.
std::size_t safe_dim(std::size_t v) { return v >= 1 ? v : 1; }
std::size_t safe_actions(int a) { return a >= 1 ? static_cast<std::size_t>(a) : 1; }

}  // namespace

Policy::Policy(PolicyBackend backend, std::size_t feature_dim, int action_count, double lr,
               double gamma)
    : backend_(backend),
      feature_dim_(feature_dim),
      action_count_(action_count),
      lr_(lr),
      gamma_(gamma),
      weights_(safe_actions(action_count), safe_dim(feature_dim)),
      bias_(safe_actions(action_count), 0.0) {
  require(feature_dim >= 1, Errc::invalid_argument, "Policy: feature_dim must be >= 1");
  require(action_count >= 1, Errc::invalid_argument, "Policy: action_count must be >= 1");
  require(lr > 0.0, Errc::invalid_argument, "Policy: lr must be positive");
  require(gamma > 0.0 && gamma <= 1.0, Errc::invalid_argument, "Policy: gamma must be in (0, 1]");
}

void Policy::set_epsilon(double eps) {
  require(eps >= 0.0 && eps <= 1.0, Errc::invalid_argument, "Policy: epsilon must be in [0, 1]");
  epsilon_ = eps;
}

double Policy::q_value(std::span<const double> features, int action) const {
  if (backend_ == PolicyBackend::tabular) {
    const auto it = table_.find(std::vector<double>(features.begin(), features.end()));
    return it == table_.end() ? 0.0 : it->second[static_cast<std::size_t>(action)];
  }
  double q = bias_[static_cast<std::size_t>(action)];
  for (std::size_t i = 0; i < features.size(); ++i)
    q += weights_(static_cast<std::size_t>(action), i) * features[i];
  return q;
}

std::vector<double> Policy::action_values(std::span<const double> features) const {
  require(features.size() == feature_dim_, Errc::dimension_mismatch,
          "Policy: feature width mismatch");
  std::vector<double> values(static_cast<std::size_t>(action_count_));
  for (int a = 0; a < action_count_; ++a) values[static_cast<std::size_t>(a)] = q_value(features, a);
  return values;
}

double Policy::max_q(std::span<const double> features) const {
  double best = q_value(features, 0);
  for (int a = 1; a < action_count_; ++a) best = std::max(best, q_value(features, a));
  return best;
}

int Policy::select_action(std::span<const double> features, Rng& rng) const {
  require(features.size() == feature_dim_, Errc::dimension_mismatch,
          "Policy: feature width mismatch");
  if (rng.uniform() < epsilon_)
    return static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(action_count_)));
  int best = 0;
  double best_q = q_value(features, 0);
  for (int a = 1; a < action_count_; ++a) {
    const double q = q_value(features, a);
    if (q > best_q) {
      best = a;
      best_q = q;
    }
  }
  return best;
}

void Policy::update(std::span<const PolicyTransition> batch) {
  for (const PolicyTransition& t : batch) {
    require(t.s.size() == feature_dim_ && t.s_next.size() == feature_dim_,
            Errc::dimension_mismatch, "Policy: feature width mismatch in batch");
    require(t.action >= 0 && t.action < action_count_, Errc::invalid_argument,
            "Policy: action index out of range");
    require(std::isfinite(t.r_total), Errc::invalid_argument, "Policy: non-finite reward");

    const double bootstrap = t.done ? 0.0 : max_q(t.s_next);
    const double td_error = t.r_total + gamma_ * bootstrap - q_value(t.s, t.action);

    if (backend_ == PolicyBackend::tabular) {
      auto [it, inserted] =
          table_.try_emplace(t.s, std::vector<double>(static_cast<std::size_t>(action_count_), 0.0));
      it->second[static_cast<std::size_t>(t.action)] += lr_ * td_error;
    } else {
      const auto a = static_cast<std::size_t>(t.action);
      bias_[a] += lr_ * td_error;
      for (std::size_t i = 0; i < t.s.size(); ++i) weights_(a, i) += lr_ * td_error * t.s[i];
    }
  }
}

}  // namespace tirlab
