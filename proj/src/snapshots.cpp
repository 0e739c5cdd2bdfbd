#include "tirlab/snapshots.hpp"

#include "tirlab/error.hpp"

namespace tirlab {

SnapshotRing::SnapshotRing(const PredictorParams& initial, std::size_t n, std::size_t j) : j_(j) {
  require(n >= 2, Errc::invalid_argument,
          "SnapshotRing: need at least 2 snapshots, a single column has a trivial spectrum");
  require(j >= 1, Errc::invalid_argument, "SnapshotRing: rotation interval must be >= 1");
  slots_.assign(n, initial);
}

bool SnapshotRing::observe_round(const PredictorParams& current) {
  ++rounds_seen_;
  if (rounds_seen_ % j_ != 0) return false;
  slots_.erase(slots_.begin());
  slots_.push_back(current);
  return true;
}

Matrix SnapshotRing::predict_matrix(std::span<const double> s, int action) const {
  const std::size_t m = slots_.front().state_dim;
  require(s.size() == m, Errc::dimension_mismatch, "predict_matrix: state width mismatch");
  Matrix p(m, slots_.size());
  for (std::size_t c = 0; c < slots_.size(); ++c) {
    const auto pred = forward(slots_[c], s, action);
    for (std::size_t r = 0; r < m; ++r) p(r, c) = pred[r];
  }
  return p;
}

}  // namespace tirlab
