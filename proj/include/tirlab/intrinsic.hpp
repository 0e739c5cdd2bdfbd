#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tirlab/dynamics.hpp"
#include "tirlab/matrix.hpp"

namespace tirlab {

enum class Engine { tir, pred_error, disagreement, rnd, none };

Engine engine_from_string(std::string_view name);
std::string_view to_string(Engine engine);

/// Fixed exponent, or linear decay from k_ini to 1 over the run.
struct KMode {
  bool scheduled = false;
  double value = 2.0;  // fixed k, or k_ini when scheduled
};

struct RewardEngineConfig {
  Engine engine = Engine::tir;
  double lambda = 0.001;
  KMode k_mode;
  double alpha = 1.0;
  double beta = 1.0;
  std::size_t ensemble_size = 5;
  double engine_scale = 1.0;  // applied to the baseline engines only

  void validate() const;
};

/// lambda-scaled weighted nuclear norm of the prediction matrix.
double tir_reward(const Matrix& p, double k, double lambda);

/// Squared prediction error of the live model against the observed next state.
double pred_error_reward(const PredictorParams& params, const Transition& t);

/// Independently initialized predictors trained on the same data.
struct Ensemble {
  std::vector<PredictorParams> members;
};

Ensemble init_ensemble(std::size_t state_dim, std::size_t action_count, std::size_t hidden,
                       std::size_t count, std::uint64_t seed);

/// Mean over output dimensions of the across-member population variance.
double disagreement_reward(const Ensemble& ensemble, std::span<const double> s, int action);

/// One gradient step for every member on the batch. Returns the mean of the
/// members' pre-update losses.
double ensemble_train(Ensemble& ensemble, std::span<const Transition> batch, double lr);

/// Frozen random target network and a predictor trained to match it.
/// Both map state features alone, so the reward is action-independent.
struct RndPair {
  Mlp target;
  Mlp predictor;
};

RndPair init_rnd(std::size_t state_dim, std::size_t hidden, std::uint64_t seed);

double rnd_reward(const RndPair& pair, std::span<const double> s);

/// Trains the predictor toward the frozen target on the given states.
/// Returns the pre-update mean loss.
double rnd_train(RndPair& pair, const std::vector<std::vector<double>>& states, double lr);

/// alpha * r_int + beta * r_ext.
double combine(double r_int, double r_ext, double alpha, double beta);

}  // namespace tirlab
