#include "tirlab/dynamics.hpp"

#include <cmath>

#include "tirlab/error.hpp"
#include "tirlab/rng.hpp"

namespace tirlab {

namespace {

void fill_uniform(Matrix& w, double scale, Rng& rng) {
  for (double& v : w.data()) v = rng.uniform(-scale, scale);
}

}  // namespace

Mlp init_mlp(std::size_t in, std::size_t hidden, std::size_t out, std::uint64_t seed) {
  require(in >= 1 && hidden >= 1 && out >= 1, Errc::invalid_argument,
          "init_mlp: all widths must be >= 1");
  Rng rng(seed);
  Mlp net{Matrix(hidden, in), std::vector<double>(hidden, 0.0), Matrix(out, hidden),
          std::vector<double>(out, 0.0)};
  fill_uniform(net.w1, 1.0 / std::sqrt(static_cast<double>(in)), rng);
  fill_uniform(net.w2, 1.0 / std::sqrt(static_cast<double>(hidden)), rng);
  return net;
}

PredictorParams init_params(std::size_t state_dim, std::size_t action_count, std::size_t hidden,
                            std::uint64_t seed) {
  require(state_dim >= 1 && action_count >= 1 && hidden >= 1, Errc::invalid_argument,
          "init_params: state_dim, action_count and hidden must be >= 1");
  return PredictorParams{init_mlp(state_dim + action_count, hidden, state_dim, seed), state_dim,
                         action_count};
}

std::vector<double> mlp_forward(const Mlp& net, std::span<const double> x) {
  require(x.size() == net.in_width(), Errc::dimension_mismatch,
          "mlp_forward: input width mismatch");
  const std::size_t hidden = net.hidden_width();
  const std::size_t out = net.out_width();
  std::vector<double> h(hidden);
  for (std::size_t i = 0; i < hidden; ++i) {
    double z = net.b1[i];
    for (std::size_t j = 0; j < x.size(); ++j) z += net.w1(i, j) * x[j];
    h[i] = std::tanh(z);
  }
  std::vector<double> y(out);
  for (std::size_t i = 0; i < out; ++i) {
    double z = net.b2[i];
    for (std::size_t j = 0; j < hidden; ++j) z += net.w2(i, j) * h[j];
    y[i] = z;
  }
  return y;
}

std::vector<double> predictor_input(const PredictorParams& p, std::span<const double> s,
                                    int action) {
  require(s.size() == p.state_dim, Errc::dimension_mismatch,
          "predictor_input: state width mismatch");
  require(action >= 0 && static_cast<std::size_t>(action) < p.action_count,
          Errc::invalid_argument, "predictor_input: action index out of range");
  std::vector<double> x(p.state_dim + p.action_count, 0.0);
  std::copy(s.begin(), s.end(), x.begin());
  x[p.state_dim + static_cast<std::size_t>(action)] = 1.0;
  return x;
}

std::vector<double> forward(const PredictorParams& p, std::span<const double> s, int action) {
  return mlp_forward(p.net, predictor_input(p, s, action));
}

double loss(std::span<const double> pred, std::span<const double> target) {
  require(pred.size() == target.size(), Errc::dimension_mismatch, "loss: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    sum += d * d;
  }
  return 0.5 * sum;
}

double mlp_gradients(const Mlp& net, const std::vector<std::vector<double>>& xs,
                     const std::vector<std::vector<double>>& ys, Mlp& grad) {
  require(!xs.empty() && xs.size() == ys.size(), Errc::invalid_argument,
          "mlp_gradients: empty or mismatched batch");
  const std::size_t in = net.in_width();
  const std::size_t hidden = net.hidden_width();
  const std::size_t out = net.out_width();

  grad = Mlp{Matrix(hidden, in), std::vector<double>(hidden, 0.0), Matrix(out, hidden),
             std::vector<double>(out, 0.0)};

  double total_loss = 0.0;
  std::vector<double> h(hidden);
  std::vector<double> err(out);
  std::vector<double> dz1(hidden);
  for (std::size_t b = 0; b < xs.size(); ++b) {
    const auto& x = xs[b];
    const auto& y = ys[b];
    require(x.size() == in && y.size() == out, Errc::dimension_mismatch,
            "mlp_gradients: batch element width mismatch");

    for (std::size_t i = 0; i < hidden; ++i) {
      double z = net.b1[i];
      for (std::size_t j = 0; j < in; ++j) z += net.w1(i, j) * x[j];
      h[i] = std::tanh(z);
    }
    for (std::size_t i = 0; i < out; ++i) {
      double z = net.b2[i];
      for (std::size_t j = 0; j < hidden; ++j) z += net.w2(i, j) * h[j];
      err[i] = z - y[i];
      total_loss += 0.5 * err[i] * err[i];
    }
    // d loss / d z2 = err; back out through the linear layer and tanh.
    for (std::size_t i = 0; i < out; ++i) {
      grad.b2[i] += err[i];
      for (std::size_t j = 0; j < hidden; ++j) grad.w2(i, j) += err[i] * h[j];
    }
    for (std::size_t j = 0; j < hidden; ++j) {
      double back = 0.0;
      for (std::size_t i = 0; i < out; ++i) back += net.w2(i, j) * err[i];
      dz1[j] = back * (1.0 - h[j] * h[j]);
    }
    for (std::size_t i = 0; i < hidden; ++i) {
      grad.b1[i] += dz1[i];
      for (std::size_t j = 0; j < in; ++j) grad.w1(i, j) += dz1[i] * x[j];
    }
  }

  const double inv_n = 1.0 / static_cast<double>(xs.size());
  for (double& v : grad.w1.data()) v *= inv_n;
  for (double& v : grad.b1) v *= inv_n;
  for (double& v : grad.w2.data()) v *= inv_n;
  for (double& v : grad.b2) v *= inv_n;
  return total_loss * inv_n;
}

double mlp_gradient_step(Mlp& net, const std::vector<std::vector<double>>& xs,
                         const std::vector<std::vector<double>>& ys, double lr) {
  require(lr > 0.0, Errc::invalid_argument, "mlp_gradient_step: lr must be positive");
  Mlp grad = net;
  const double pre_loss = mlp_gradients(net, xs, ys, grad);
  for (std::size_t i = 0; i < net.w1.data().size(); ++i) net.w1.data()[i] -= lr * grad.w1.data()[i];
  for (std::size_t i = 0; i < net.b1.size(); ++i) net.b1[i] -= lr * grad.b1[i];
  for (std::size_t i = 0; i < net.w2.data().size(); ++i) net.w2.data()[i] -= lr * grad.w2.data()[i];
  for (std::size_t i = 0; i < net.b2.size(); ++i) net.b2[i] -= lr * grad.b2[i];
  return pre_loss;
}

double train_step(PredictorParams& p, std::span<const Transition> batch, double lr) {
  require(!batch.empty(), Errc::invalid_argument, "train_step: empty batch");
  std::vector<std::vector<double>> xs;
  std::vector<std::vector<double>> ys;
  xs.reserve(batch.size());
  ys.reserve(batch.size());
  for (const Transition& t : batch) {
    xs.push_back(predictor_input(p, t.s, t.action));
    require(t.s_next.size() == p.state_dim, Errc::dimension_mismatch,
            "train_step: next-state width mismatch");
    ys.push_back(t.s_next);
  }
  return mlp_gradient_step(p.net, xs, ys, lr);
}

}  // namespace tirlab
