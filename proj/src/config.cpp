#include "tirlab/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "tirlab/error.hpp"

namespace tirlab {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double parsed = 0.0;
  try {
    parsed = std::stod(value, &pos);
  } catch (const std::exception&) {
    fail(Errc::invalid_argument, "config: key '" + key + "' expects a number, got '" + value + "'");
  }
  require(pos == value.size(), Errc::invalid_argument,
          "config: key '" + key + "' has trailing characters in '" + value + "'");
  return parsed;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  require(!value.empty() && value.find_first_not_of("0123456789") == std::string::npos,
          Errc::invalid_argument,
          "config: key '" + key + "' expects a non-negative integer, got '" + value + "'");
  try {
    return std::stoull(value);
  } catch (const std::exception&) {
    fail(Errc::invalid_argument, "config: key '" + key + "' out of range: '" + value + "'");
  }
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  return static_cast<std::size_t>(parse_u64(key, value));
}

std::string format_real(double v) {
  // Shortest fixed-precision form that round-trips through stod.
  for (int precision = 15; precision <= 17; ++precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::stod(buf) == v) return buf;
  }
  return {};
}

struct KeyEntry {
  const char* name;
  std::function<void(ExperimentConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

KeyEntry str_key(const char* name, std::string ExperimentConfig::* field) {
  return {name, [field](ExperimentConfig& c, const std::string&, const std::string& v) { c.*field = v; },
          [field](const ExperimentConfig& c) { return c.*field; }};
}

KeyEntry real_key(const char* name, double ExperimentConfig::* field) {
  return {name,
          [field](ExperimentConfig& c, const std::string& k, const std::string& v) {
            c.*field = parse_real(k, v);
          },
          [field](const ExperimentConfig& c) { return format_real(c.*field); }};
}

KeyEntry count_key(const char* name, std::size_t ExperimentConfig::* field) {
  return {name,
          [field](ExperimentConfig& c, const std::string& k, const std::string& v) {
            c.*field = parse_count(k, v);
          },
          [field](const ExperimentConfig& c) { return std::to_string(c.*field); }};
}

const std::vector<KeyEntry>& registry() {
  static const std::vector<KeyEntry> entries = {
      str_key("env", &ExperimentConfig::env),
      count_key("chain_length", &ExperimentConfig::chain_length),
      str_key("grid_map", &ExperimentConfig::grid_map),
      real_key("noise_sigma", &ExperimentConfig::noise_sigma),
      count_key("noise_dims", &ExperimentConfig::noise_dims),
      count_key("episode_cap", &ExperimentConfig::episode_cap),
      str_key("engine", &ExperimentConfig::engine),
      real_key("lambda", &ExperimentConfig::lambda),
      str_key("k_mode", &ExperimentConfig::k_mode),
      real_key("k", &ExperimentConfig::k),
      real_key("k_ini", &ExperimentConfig::k_ini),
      real_key("alpha", &ExperimentConfig::alpha),
      real_key("beta", &ExperimentConfig::beta),
      count_key("ensemble_size", &ExperimentConfig::ensemble_size),
      real_key("engine_scale", &ExperimentConfig::engine_scale),
      count_key("n", &ExperimentConfig::n),
      count_key("j", &ExperimentConfig::j),
      count_key("H", &ExperimentConfig::hidden),
      real_key("lr_pred", &ExperimentConfig::lr_pred),
      count_key("U", &ExperimentConfig::rounds),
      count_key("T", &ExperimentConfig::rollout),
      count_key("N", &ExperimentConfig::batch),
      count_key("steps", &ExperimentConfig::steps),
      count_key("buffer_capacity", &ExperimentConfig::buffer_capacity),
      str_key("policy", &ExperimentConfig::policy),
      real_key("gamma", &ExperimentConfig::gamma),
      real_key("lr_policy", &ExperimentConfig::lr_policy),
      real_key("eps_start", &ExperimentConfig::eps_start),
      real_key("eps_final", &ExperimentConfig::eps_final),
      real_key("eps_frac", &ExperimentConfig::eps_frac),
      {"seed",
       [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.seed = parse_u64(k, v);
       },
       [](const ExperimentConfig& c) { return std::to_string(c.seed); }},
      str_key("out", &ExperimentConfig::out),
  };
  return entries;
}

const KeyEntry* find_key(const std::string& key) {
  for (const KeyEntry& entry : registry())
    if (key == entry.name) return &entry;
  return nullptr;
}

}  // namespace

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  const KeyEntry* entry = find_key(key);
  require(entry != nullptr, Errc::invalid_argument, "config: unknown key '" + key + "'");
  entry->set(*this, key, value);
}

std::string ExperimentConfig::get(const std::string& key) const {
  const KeyEntry* entry = find_key(key);
  require(entry != nullptr, Errc::invalid_argument, "config: unknown key '" + key + "'");
  return entry->get(*this);
}

std::vector<std::string> ExperimentConfig::keys() {
  std::vector<std::string> names;
  for (const KeyEntry& entry : registry()) names.emplace_back(entry.name);
  return names;
}

void ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::io, "config: cannot open '" + path + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, Errc::invalid_argument,
            "config: " + path + ":" + std::to_string(line_no) + ": expected key=value");
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void ExperimentConfig::validate() const {
  require(env == "chain" || env == "grid" || env == "noisy-chain" || env == "noisy-grid",
          Errc::invalid_argument, "config: env must be chain|grid|noisy-chain|noisy-grid");
  require(k_mode == "fixed" || k_mode == "scheduled", Errc::invalid_argument,
          "config: k_mode must be fixed|scheduled");
  require(policy == "auto" || policy == "tabular" || policy == "linear", Errc::invalid_argument,
          "config: policy must be auto|tabular|linear");
  require(n >= 2, Errc::invalid_argument, "config: n must be >= 2");
  require(j >= 1, Errc::invalid_argument, "config: j must be >= 1");
  require(hidden >= 1, Errc::invalid_argument, "config: H must be >= 1");
  require(rounds >= 1, Errc::invalid_argument, "config: U must be >= 1");
  require(rollout >= 1, Errc::invalid_argument, "config: T must be >= 1");
  require(batch >= 1, Errc::invalid_argument, "config: N must be >= 1");
  require(lr_pred > 0.0, Errc::invalid_argument, "config: lr_pred must be positive");
  require(lr_policy > 0.0, Errc::invalid_argument, "config: lr_policy must be positive");
  require(gamma > 0.0 && gamma <= 1.0, Errc::invalid_argument, "config: gamma must be in (0, 1]");
  require(eps_start >= 0.0 && eps_start <= 1.0 && eps_final >= 0.0 && eps_final <= 1.0,
          Errc::invalid_argument, "config: eps_start/eps_final must be in [0, 1]");
  require(eps_final <= eps_start, Errc::invalid_argument,
          "config: eps_final must not exceed eps_start");
  require(eps_frac > 0.0 && eps_frac <= 1.0, Errc::invalid_argument,
          "config: eps_frac must be in (0, 1]");
  require(std::isfinite(noise_sigma), Errc::invalid_argument,
          "config: noise_sigma must be finite");
  engine_config().validate();
  env_spec().validate();
}

double ExperimentConfig::resolved_noise_sigma() const {
  if (noise_sigma >= 0.0) return noise_sigma;
  return env.rfind("noisy-", 0) == 0 ? 0.25 : 0.0;
}

EnvSpec ExperimentConfig::env_spec() const {
  EnvSpec spec;
  const bool is_grid = env == "grid" || env == "noisy-grid";
  spec.kind = is_grid ? EnvKind::grid : EnvKind::chain;
  spec.chain_length = chain_length;
  spec.noise_sigma = resolved_noise_sigma();
  spec.noise_dims = noise_dims;
  spec.noise_append = true;
  spec.episode_cap = episode_cap;
  if (is_grid) {
    const std::string builtin_prefix = "builtin:";
    if (grid_map.rfind(builtin_prefix, 0) == 0) {
      spec.map_text = builtin_map(grid_map.substr(builtin_prefix.size()));
    } else {
      std::ifstream in(grid_map);
      require(in.good(), Errc::io, "config: cannot open map file '" + grid_map + "'");
      std::ostringstream text;
      text << in.rdbuf();
      spec.map_text = text.str();
    }
  }
  return spec;
}

RewardEngineConfig ExperimentConfig::engine_config() const {
  RewardEngineConfig cfg;
  cfg.engine = engine_from_string(engine);
  cfg.lambda = lambda;
  cfg.k_mode.scheduled = k_mode == "scheduled";
  cfg.k_mode.value = cfg.k_mode.scheduled ? k_ini : k;
  cfg.alpha = alpha;
  cfg.beta = beta;
  cfg.ensemble_size = ensemble_size;
  cfg.engine_scale = engine_scale;
  return cfg;
}

PolicyBackend ExperimentConfig::resolved_backend() const {
  if (policy == "tabular") return PolicyBackend::tabular;
  if (policy == "linear") return PolicyBackend::linear;
  return resolved_noise_sigma() > 0.0 ? PolicyBackend::linear : PolicyBackend::tabular;
}

std::size_t ExperimentConfig::resolved_rounds() const {
  if (steps == 0) return rounds;
  return (steps + rollout - 1) / rollout;
}

std::size_t ExperimentConfig::resolved_buffer_capacity() const {
  return buffer_capacity > 0 ? buffer_capacity : 50 * rollout;
}

}  // namespace tirlab
