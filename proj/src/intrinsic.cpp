#include "tirlab/intrinsic.hpp"

#include <string>

#include "tirlab/error.hpp"
#include "tirlab/linalg.hpp"
#include "tirlab/rng.hpp"

namespace tirlab {

Engine engine_from_string(std::string_view name) {
  if (name == "tir") return Engine::tir;
  if (name == "pred_error") return Engine::pred_error;
  if (name == "disagreement") return Engine::disagreement;
  if (name == "rnd") return Engine::rnd;
  if (name == "none") return Engine::none;
  fail(Errc::invalid_argument,
       "unknown engine '" + std::string(name) +
           "', expected tir|pred_error|disagreement|rnd|none");
}

std::string_view to_string(Engine engine) {
  switch (engine) {
    case Engine::tir: return "tir";
    case Engine::pred_error: return "pred_error";
    case Engine::disagreement: return "disagreement";
    case Engine::rnd: return "rnd";
    case Engine::none: return "none";
  }
  return "?";
}

void RewardEngineConfig::validate() const {
  require(lambda > 0.0, Errc::invalid_argument, "engine config: lambda must be positive");
  require(alpha >= 0.0 && beta >= 0.0, Errc::invalid_argument,
          "engine config: alpha and beta must be non-negative");
  require(alpha > 0.0 || beta > 0.0, Errc::invalid_argument,
          "engine config: alpha and beta cannot both be zero");
  require(k_mode.value >= 1.0, Errc::invalid_argument, "engine config: k must be >= 1");
  require(engine_scale > 0.0, Errc::invalid_argument,
          "engine config: engine_scale must be positive");
  if (engine == Engine::disagreement)
    require(ensemble_size >= 2, Errc::invalid_argument,
            "engine config: disagreement needs an ensemble of at least 2");
}

double tir_reward(const Matrix& p, double k, double lambda) {
  require(lambda > 0.0, Errc::invalid_argument, "tir_reward: lambda must be positive");
  return lambda * weighted_nuclear_norm(p, k);
}

double pred_error_reward(const PredictorParams& params, const Transition& t) {
  return loss(forward(params, t.s, t.action), t.s_next);
}

Ensemble init_ensemble(std::size_t state_dim, std::size_t action_count, std::size_t hidden,
                       std::size_t count, std::uint64_t seed) {
  require(count >= 2, Errc::invalid_argument, "init_ensemble: need at least 2 members");
  Ensemble e;
  e.members.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    e.members.push_back(init_params(state_dim, action_count, hidden, Rng::derive(seed, i)));
  return e;
}

double disagreement_reward(const Ensemble& ensemble, std::span<const double> s, int action) {
  require(ensemble.members.size() >= 2, Errc::invalid_argument,
          "disagreement_reward: need at least 2 members");
  const std::size_t e = ensemble.members.size();
  const std::size_t m = ensemble.members.front().state_dim;
  std::vector<std::vector<double>> preds;
  preds.reserve(e);
  for (const auto& member : ensemble.members) preds.push_back(forward(member, s, action));

  // Population variance computed on member-0-shifted values: identical
  // members give exact zeros all the way through, so a duplicated ensemble
  // scores exactly 0.0 rather than rounding noise.
  double total = 0.0;
  for (std::size_t d = 0; d < m; ++d) {
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < e; ++i) {
      const double delta = preds[i][d] - preds[0][d];
      sum += delta;
      sum_sq += delta * delta;
    }
    const double mean = sum / static_cast<double>(e);
    const double var = sum_sq / static_cast<double>(e) - mean * mean;
    total += std::max(var, 0.0);
  }
  return total / static_cast<double>(m);
}

double ensemble_train(Ensemble& ensemble, std::span<const Transition> batch, double lr) {
  double mean_loss = 0.0;
  for (auto& member : ensemble.members) mean_loss += train_step(member, batch, lr);
  return mean_loss / static_cast<double>(ensemble.members.size());
}

RndPair init_rnd(std::size_t state_dim, std::size_t hidden, std::uint64_t seed) {
  return RndPair{init_mlp(state_dim, hidden, state_dim, Rng::derive(seed, 0)),
                 init_mlp(state_dim, hidden, state_dim, Rng::derive(seed, 1))};
}

double rnd_reward(const RndPair& pair, std::span<const double> s) {
  return loss(mlp_forward(pair.predictor, s), mlp_forward(pair.target, s));
}

double rnd_train(RndPair& pair, const std::vector<std::vector<double>>& states, double lr) {
  require(!states.empty(), Errc::invalid_argument, "rnd_train: empty batch");
  std::vector<std::vector<double>> targets;
  targets.reserve(states.size());
  for (const auto& s : states) targets.push_back(mlp_forward(pair.target, s));
  return mlp_gradient_step(pair.predictor, states, targets, lr);
}

double combine(double r_int, double r_ext, double alpha, double beta) {
  return alpha * r_int + beta * r_ext;
}

}  // namespace tirlab
