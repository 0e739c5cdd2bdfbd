#include "tirlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "tirlab/agent.hpp"
#include "tirlab/envs.hpp"
#include "tirlab/error.hpp"
#include "tirlab/intrinsic.hpp"
#include "tirlab/linalg.hpp"
#include "tirlab/snapshots.hpp"

namespace tirlab {

namespace {

constexpr std::uint64_t kStreamPredictor = 0x707265'64;  // "pred"
constexpr std::uint64_t kStreamActions = 0x616374;       // "act"
constexpr std::uint64_t kStreamBuffer = 0x627566;        // "buf"
constexpr std::uint64_t kStreamEnsemble = 0x656e73;      // "ens"
constexpr std::uint64_t kStreamRnd = 0x726e64;           // "rnd"

constexpr const char* kCsvHeader = "round,steps,ext_return,mean_int_reward,pred_loss,k,coverage,wallclock_ms";

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  const auto now = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(now - since).count();
}

// Population mean and standard deviation, two-pass.
std::pair<double, double> mean_std(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(xs.size());
  return {mean, std::sqrt(var)};
}

std::string sanitize_field(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '"' || c == '\n' || c == '\r') c = ' ';
  return s;
}

}  // namespace

double RunLog::total_ext_return() const {
  double total = 0.0;
  for (const RunRecord& r : records) total += r.ext_return;
  return total;
}

std::size_t RunLog::final_coverage() const {
  return records.empty() ? 0 : records.back().coverage;
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  require(capacity >= 1, Errc::invalid_argument, "ReplayBuffer: capacity must be >= 1");
}

void ReplayBuffer::push(Transition t) {
  if (data_.size() < capacity_) {
    data_.push_back(std::move(t));
    return;
  }
  data_[next_] = std::move(t);
  next_ = (next_ + 1) % capacity_;
}

std::vector<Transition> ReplayBuffer::sample(std::size_t count, Rng& rng) const {
  require(!data_.empty(), Errc::invalid_argument, "ReplayBuffer: sample from empty buffer");
  std::vector<Transition> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(data_[rng.uniform_index(data_.size())]);
  return out;
}

RunLog run_experiment(const ExperimentConfig& config) {
  const auto run_start = std::chrono::steady_clock::now();
  config.validate();

  Environment env(config.env_spec());
  const std::size_t feature_dim = env.feature_dim();
  const int action_count = env.action_count();
  const RewardEngineConfig engine_cfg = config.engine_config();

  const std::size_t total_rounds = config.resolved_rounds();
  const std::size_t rollout_steps = config.rollout;
  const std::size_t batch_size = config.batch;

  PredictorParams params = init_params(feature_dim, static_cast<std::size_t>(action_count),
                                       config.hidden, Rng::derive(config.seed, kStreamPredictor));
  SnapshotRing ring(params, config.n, config.j);
  ReplayBuffer buffer(config.resolved_buffer_capacity());
  Policy policy(config.resolved_backend(), feature_dim, action_count, config.lr_policy,
                config.gamma);
  Rng action_rng(Rng::derive(config.seed, kStreamActions));
  Rng buffer_rng(Rng::derive(config.seed, kStreamBuffer));

  std::optional<Ensemble> ensemble;
  if (engine_cfg.engine == Engine::disagreement)
    ensemble = init_ensemble(feature_dim, static_cast<std::size_t>(action_count), config.hidden,
                             engine_cfg.ensemble_size, Rng::derive(config.seed, kStreamEnsemble));
  std::optional<RndPair> rnd;
  if (engine_cfg.engine == Engine::rnd)
    rnd = init_rnd(feature_dim, config.hidden, Rng::derive(config.seed, kStreamRnd));

  CoverageTracker coverage;
  Observation obs = env.reset(config.seed);
  coverage.observe(obs.raw_state);

  const auto k_at = [&](std::size_t round) {
    if (!engine_cfg.k_mode.scheduled) return engine_cfg.k_mode.value;
    return k_schedule(static_cast<long>(round), static_cast<long>(total_rounds),
                      engine_cfg.k_mode.value);
  };

  RunLog log;
  log.records.reserve(total_rounds + 1);
  log.records.push_back(RunRecord{0, 0, 0.0, 0.0, 0.0, k_at(0), coverage.count(),
                                  elapsed_ms(run_start)});

  const double anneal_window =
      config.eps_frac * static_cast<double>(total_rounds) * static_cast<double>(rollout_steps);

  for (std::size_t u = 1; u <= total_rounds; ++u) {
    const auto round_start = std::chrono::steady_clock::now();

    const double steps_done = static_cast<double>((u - 1) * rollout_steps);
    const double frac = anneal_window > 0.0 ? std::min(1.0, steps_done / anneal_window) : 1.0;
    policy.set_epsilon(config.eps_start + (config.eps_final - config.eps_start) * frac);

    double ext_return = 0.0;
    for (std::size_t t = 0; t < rollout_steps; ++t) {
      const int action = policy.select_action(obs.features, action_rng);
      const Environment::StepResult result = env.step(action);
      buffer.push(Transition{obs.features, action, result.reward, result.obs.features,
                             result.done});
      coverage.observe(result.obs.raw_state);
      ext_return += result.reward;
      if (result.done) {
        obs = env.reset();
        coverage.observe(obs.raw_state);
      } else {
        obs = result.obs;
      }
    }

    const std::vector<Transition> batch = buffer.sample(batch_size, buffer_rng);
    const double k_now = k_at(u);

    const auto intrinsic = [&](const Transition& t) {
      switch (engine_cfg.engine) {
        case Engine::tir:
          return tir_reward(ring.predict_matrix(t.s, t.action), k_now, engine_cfg.lambda);
        case Engine::pred_error:
          return engine_cfg.engine_scale * pred_error_reward(params, t);
        case Engine::disagreement:
          return engine_cfg.engine_scale * disagreement_reward(*ensemble, t.s, t.action);
        case Engine::rnd:
          return engine_cfg.engine_scale * rnd_reward(*rnd, t.s);
        case Engine::none:
          return 0.0;
      }
      return 0.0;
    };

    double int_sum = 0.0;
    std::vector<PolicyTransition> policy_batch;
    policy_batch.reserve(batch.size());
    for (const Transition& t : batch) {
      const double r_int = intrinsic(t);
      int_sum += r_int;
      policy_batch.push_back(PolicyTransition{
          t.s, t.action, combine(r_int, t.r_ext, engine_cfg.alpha, engine_cfg.beta), t.s_next,
          t.done});
    }
    const double mean_int = int_sum / static_cast<double>(batch.size());

    const double pred_loss = train_step(params, batch, config.lr_pred);
    if (ensemble) ensemble_train(*ensemble, batch, config.lr_pred);
    if (rnd) {
      std::vector<std::vector<double>> states;
      states.reserve(batch.size());
      for (const Transition& t : batch) states.push_back(t.s);
      rnd_train(*rnd, states, config.lr_pred);
    }

    if (ring.observe_round(params)) log.rotation_rounds.push_back(u);
    policy.update(policy_batch);

    log.records.push_back(RunRecord{u, u * rollout_steps, ext_return, mean_int, pred_loss, k_now,
                                    coverage.count(), elapsed_ms(round_start)});
  }
  return log;
}

double hns(double agent_score, double random_score, double human_score) {
  require(std::isfinite(agent_score) && std::isfinite(random_score) && std::isfinite(human_score),
          Errc::invalid_argument, "hns: scores must be finite");
  require(human_score != random_score, Errc::invalid_argument,
          "hns: human and random scores must differ");
  return (agent_score - random_score) / (human_score - random_score);
}

void emit_csv(const RunLog& log, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), Errc::io, "emit_csv: cannot open '" + path + "'");
  out << kCsvHeader << '\n';
  char line[256];
  for (const RunRecord& r : log.records) {
    std::snprintf(line, sizeof(line), "%zu,%zu,%.9f,%.9f,%.9f,%.9f,%zu,%.3f", r.round, r.steps,
                  r.ext_return, r.mean_int_reward, r.pred_loss, r.k, r.coverage, r.wallclock_ms);
    out << line << '\n';
  }
  out.flush();
  require(out.good(), Errc::io, "emit_csv: write failed for '" + path + "'");
}

RunLog parse_csv(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::io, "parse_csv: cannot open '" + path + "'");
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), Errc::io, "parse_csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  require(line == kCsvHeader, Errc::io, "parse_csv: unexpected header in '" + path + "'");

  RunLog log;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    require(fields.size() == 8, Errc::io,
            "parse_csv: " + path + ":" + std::to_string(line_no) + ": expected 8 fields");
    try {
      RunRecord r;
      r.round = std::stoull(fields[0]);
      r.steps = std::stoull(fields[1]);
      r.ext_return = std::stod(fields[2]);
      r.mean_int_reward = std::stod(fields[3]);
      r.pred_loss = std::stod(fields[4]);
      r.k = std::stod(fields[5]);
      r.coverage = std::stoull(fields[6]);
      r.wallclock_ms = std::stod(fields[7]);
      log.records.push_back(r);
    } catch (const std::exception&) {
      fail(Errc::io, "parse_csv: " + path + ":" + std::to_string(line_no) + ": bad field");
    }
  }
  return log;
}

CompareResult compare_engines(const ExperimentConfig& base, const std::vector<std::string>& engines,
                              const std::vector<std::uint64_t>& seeds,
                              const std::string& out_dir) {
  require(!engines.empty(), Errc::invalid_argument, "compare: need at least one engine");
  require(!seeds.empty(), Errc::invalid_argument, "compare: need at least one seed");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  require(!ec, Errc::io, "compare: cannot create output directory '" + out_dir + "'");

  CompareResult result;
  for (const std::string& engine : engines) {
    for (const std::uint64_t seed : seeds) {
      CompareCell cell;
      cell.engine = engine;
      cell.seed = seed;
      cell.csv_path = out_dir + "/" + engine + "_seed" + std::to_string(seed) + ".csv";
      try {
        ExperimentConfig cfg = base;
        cfg.set("engine", engine);
        cfg.seed = seed;
        const RunLog log = run_experiment(cfg);
        emit_csv(log, cell.csv_path);
        cell.ok = true;
        cell.final_ext_return = log.records.back().ext_return;
        cell.total_ext_return = log.total_ext_return();
        cell.final_coverage = log.final_coverage();
      } catch (const std::exception& e) {
        cell.ok = false;
        cell.detail = e.what();
      }
      result.cells.push_back(cell);
    }
  }

  for (const std::string& engine : engines) {
    CompareRow row;
    row.engine = engine;
    std::vector<double> finals, totals, coverages;
    for (const CompareCell& cell : result.cells) {
      if (cell.engine != engine) continue;
      if (!cell.ok) {
        ++row.failures;
        continue;
      }
      ++row.runs;
      finals.push_back(cell.final_ext_return);
      totals.push_back(cell.total_ext_return);
      coverages.push_back(static_cast<double>(cell.final_coverage));
    }
    std::tie(row.mean_final_ext_return, row.std_final_ext_return) = mean_std(finals);
    std::tie(row.mean_total_ext_return, row.std_total_ext_return) = mean_std(totals);
    std::tie(row.mean_final_coverage, row.std_final_coverage) = mean_std(coverages);
    result.summary.push_back(row);
  }

  {
    const std::string path = out_dir + "/summary.csv";
    std::ofstream out(path);
    require(out.good(), Errc::io, "compare: cannot open '" + path + "'");
    out << "engine,runs,failures,mean_final_ext_return,std_final_ext_return,"
           "mean_total_ext_return,std_total_ext_return,mean_final_coverage,std_final_coverage\n";
    char line[512];
    for (const CompareRow& r : result.summary) {
      std::snprintf(line, sizeof(line), "%s,%zu,%zu,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f",
                    r.engine.c_str(), r.runs, r.failures, r.mean_final_ext_return,
                    r.std_final_ext_return, r.mean_total_ext_return, r.std_total_ext_return,
                    r.mean_final_coverage, r.std_final_coverage);
      out << line << '\n';
    }
    require(out.good(), Errc::io, "compare: write failed for '" + path + "'");
  }
  {
    const std::string path = out_dir + "/cells.csv";
    std::ofstream out(path);
    require(out.good(), Errc::io, "compare: cannot open '" + path + "'");
    out << "engine,seed,status,detail,csv_path\n";
    for (const CompareCell& cell : result.cells) {
      out << cell.engine << ',' << cell.seed << ',' << (cell.ok ? "ok" : "error") << ','
          << sanitize_field(cell.detail) << ',' << (cell.ok ? cell.csv_path : "") << '\n';
    }
    require(out.good(), Errc::io, "compare: write failed for '" + path + "'");
  }
  return result;
}

}  // namespace tirlab
