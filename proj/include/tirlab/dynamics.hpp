#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tirlab/matrix.hpp"

namespace tirlab {

/// Two-layer feedforward map: input -> hidden (tanh) -> output (linear).
/// Also used as the carrier for parameter gradients, which share the layout.
struct Mlp {
  Matrix w1;               // hidden x in
  std::vector<double> b1;  // hidden
  Matrix w2;               // out x hidden
  std::vector<double> b2;  // out

  std::size_t in_width() const { return w1.cols(); }
  std::size_t hidden_width() const { return w1.rows(); }
  std::size_t out_width() const { return w2.rows(); }

  bool operator==(const Mlp&) const = default;
};

/// Forward-dynamics network over featurized state plus one-hot action.
struct PredictorParams {
  Mlp net;
  std::size_t state_dim = 0;
  std::size_t action_count = 0;

  bool operator==(const PredictorParams&) const = default;
};

/// One environment step with featurized observations.
struct Transition {
  std::vector<double> s;
  int action = 0;
  double r_ext = 0.0;
  std::vector<double> s_next;
  bool done = false;
};

/// Weights uniform in +-1/sqrt(fan_in), biases zero, reproducible per seed.
Mlp init_mlp(std::size_t in, std::size_t hidden, std::size_t out, std::uint64_t seed);

PredictorParams init_params(std::size_t state_dim, std::size_t action_count, std::size_t hidden,
                            std::uint64_t seed);

std::vector<double> mlp_forward(const Mlp& net, std::span<const double> x);

/// Concatenates the feature vector with the one-hot action encoding.
std::vector<double> predictor_input(const PredictorParams& p, std::span<const double> s,
                                    int action);

/// Next-state prediction for a state-action pair.
std::vector<double> forward(const PredictorParams& p, std::span<const double> s, int action);

/// Half squared error, (1/2) * |pred - target|^2.
double loss(std::span<const double> pred, std::span<const double> target);

/// Mean loss over the batch and its analytic parameter gradient.
/// No update is applied; `grad` is overwritten with the result.
double mlp_gradients(const Mlp& net, const std::vector<std::vector<double>>& xs,
                     const std::vector<std::vector<double>>& ys, Mlp& grad);

/// One full-batch gradient-descent step. Returns the pre-update mean loss.
double mlp_gradient_step(Mlp& net, const std::vector<std::vector<double>>& xs,
                         const std::vector<std::vector<double>>& ys, double lr);

/// Gradient step of the predictor on a batch of transitions, targets are the
/// observed next-state features. Returns the pre-update mean loss.
double train_step(PredictorParams& p, std::span<const Transition> batch, double lr);

}  // namespace tirlab
