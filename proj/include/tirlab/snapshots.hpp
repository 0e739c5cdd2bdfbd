#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tirlab/dynamics.hpp"
#include "tirlab/matrix.hpp"

namespace tirlab {

/// Sliding window of n frozen predictor generations, oldest first.
/// All slots start as copies of the initial parameters, so the prediction
/// matrix has a fixed shape from the first round; differentiation between
/// columns begins once rotations start.
class SnapshotRing {
public:
  SnapshotRing(const PredictorParams& initial, std::size_t n, std::size_t j);

  /// Marks one completed update round. On every j-th round the oldest slot
  /// is dropped and a frozen copy of `current` becomes the newest. Returns
  /// true when a rotation happened.
  bool observe_round(const PredictorParams& current);

  /// Prediction matrix for one state-action pair: column c holds the
  /// prediction of slot c, columns ordered oldest to newest.
  Matrix predict_matrix(std::span<const double> s, int action) const;

  const std::vector<PredictorParams>& slots() const { return slots_; }
  std::size_t size() const { return slots_.size(); }
  std::size_t interval() const { return j_; }
  std::uint64_t rounds_seen() const { return rounds_seen_; }
  std::uint64_t rotations() const { return rounds_seen_ / j_; }

  bool operator==(const SnapshotRing&) const = default;

private:
  std::vector<PredictorParams> slots_;
  std::size_t j_;
  std::uint64_t rounds_seen_ = 0;
};

}  // namespace tirlab
