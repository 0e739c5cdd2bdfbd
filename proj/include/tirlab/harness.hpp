#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "tirlab/config.hpp"
#include "tirlab/dynamics.hpp"
#include "tirlab/rng.hpp"

namespace tirlab {

/// One row of the run log. Record 0 captures the freshly initialized state
/// (no env steps yet); records 1..U each cover one outer round.
struct RunRecord {
  std::size_t round = 0;
  std::size_t steps = 0;  // cumulative env steps
  double ext_return = 0.0;  // extrinsic reward collected during this round
  double mean_int_reward = 0.0;  // batch mean of the engine's intrinsic reward
  double pred_loss = 0.0;  // predictor batch loss before the round's update
  double k = 0.0;
  std::size_t coverage = 0;  // distinct raw states visited so far
  double wallclock_ms = 0.0;

  bool operator==(const RunRecord&) const = default;
};

struct RunLog {
  std::vector<RunRecord> records;
  std::vector<std::size_t> rotation_rounds;  // rounds where the snapshot ring rotated

  double total_ext_return() const;
  std::size_t final_coverage() const;
};

/// Bounded FIFO of transitions; sampling is uniform with replacement from the
/// caller's stream.
class ReplayBuffer {
public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  std::vector<Transition> sample(std::size_t count, Rng& rng) const;

  std::size_t size() const { return data_.size(); }
  std::size_t capacity() const { return capacity_; }
  const Transition& at(std::size_t i) const { return data_[i]; }

private:
  std::size_t capacity_;
  std::size_t next_ = 0;
  std::vector<Transition> data_;
};

/// Distinct raw states seen so far. Starts empty.
class CoverageTracker {
public:
  void observe(int raw_state) { visited_.insert(raw_state); }
  std::size_t count() const { return visited_.size(); }

private:
  std::unordered_set<int> visited_;
};

/// Runs the full loop: U rounds of collect T steps, sample N transitions,
/// score them with the configured engine, update predictor and policy, rotate
/// snapshots every j rounds. (config, seed) fully determines the log.
RunLog run_experiment(const ExperimentConfig& config);

/// (agent - random) / (human - random).
double hns(double agent_score, double random_score, double human_score);

void emit_csv(const RunLog& log, const std::string& path);
RunLog parse_csv(const std::string& path);

struct CompareCell {
  std::string engine;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string detail;  // error text when !ok
  double final_ext_return = 0.0;
  double total_ext_return = 0.0;
  std::size_t final_coverage = 0;
  std::string csv_path;
};

struct CompareRow {
  std::string engine;
  std::size_t runs = 0;      // successful cells
  std::size_t failures = 0;
  double mean_final_ext_return = 0.0;
  double std_final_ext_return = 0.0;
  double mean_total_ext_return = 0.0;
  double std_total_ext_return = 0.0;
  double mean_final_coverage = 0.0;
  double std_final_coverage = 0.0;
};

struct CompareResult {
  std::vector<CompareCell> cells;
  std::vector<CompareRow> summary;  // one row per engine, input order
};

/// Runs engines x seeds, writing <engine>_seed<seed>.csv per cell plus
/// summary.csv and cells.csv under out_dir. A failing cell is recorded and
/// the remaining cells still run.
CompareResult compare_engines(const ExperimentConfig& base, const std::vector<std::string>& engines,
                              const std::vector<std::uint64_t>& seeds, const std::string& out_dir);

}  // namespace tirlab
