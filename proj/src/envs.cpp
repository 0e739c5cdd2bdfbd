#include "tirlab/envs.hpp"

#include <cmath>
#include <sstream>

#include "tirlab/error.hpp"

namespace tirlab {

namespace {

// Coarse block side used by the one-hot part of the feature encoding.
constexpr int kBlockSize = 5;

constexpr std::uint64_t kNoiseStream = 0x6e6f697365;  // "noise"

std::vector<std::string> split_rows(const std::string& text) {
  std::vector<std::string> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) rows.push_back(line);
  }
  return rows;
}

}  // namespace

std::size_t EnvSpec::resolved_episode_cap() const {
  if (episode_cap > 0) return episode_cap;
  return kind == EnvKind::chain ? 200 : 500;
}

void EnvSpec::validate() const {
  require(noise_sigma >= 0.0, Errc::invalid_argument, "env spec: noise_sigma must be >= 0");
  if (kind == EnvKind::chain) {
    require(chain_length >= 3, Errc::invalid_argument, "env spec: chain length must be >= 3");
  } else {
    require(!map_text.empty(), Errc::invalid_argument, "env spec: grid needs a map");
  }
}

std::string builtin_map(const std::string& name) {
  if (name == "four_room_20") {
    // 20x20 grid split into four rooms by a cross-shaped wall with one
    // doorway per wall segment. Start top-left, goal bottom-right.
    std::string map;
    for (int y = 0; y < 20; ++y) {
      for (int x = 0; x < 20; ++x) {
        const bool vwall = (x == 9) && (y != 4 && y != 14);
        const bool hwall = (y == 9) && (x != 4 && x != 14);
        char c = (vwall || hwall) ? '#' : '.';
        if (x == 0 && y == 0) c = 'S';
        if (x == 19 && y == 19) c = 'G';
        map += c;
      }
      map += '\n';
    }
    return map;
  }
  fail(Errc::invalid_argument, "unknown builtin map '" + name + "'");
}

void add_noise(std::vector<double>& features, double sigma, std::size_t dims, bool append,
               Rng& stream) {
  require(sigma >= 0.0, Errc::invalid_argument, "add_noise: sigma must be >= 0");
  if (sigma == 0.0) return;
  if (append) {
    for (std::size_t i = 0; i < dims; ++i) features.push_back(stream.gaussian(sigma));
  } else {
    for (double& v : features) v += stream.gaussian(sigma);
  }
}

Environment::Environment(EnvSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  if (spec_.kind == EnvKind::grid) {
    const auto rows = split_rows(spec_.map_text);
    require(rows.size() >= 3, Errc::invalid_argument, "grid map: need at least 3 rows");
    height_ = static_cast<int>(rows.size());
    width_ = static_cast<int>(rows.front().size());
    require(width_ >= 3, Errc::invalid_argument, "grid map: need at least 3 columns");
    wall_.assign(static_cast<std::size_t>(width_) * height_, false);
    int starts = 0;
    int goals = 0;
    for (int y = 0; y < height_; ++y) {
      require(static_cast<int>(rows[y].size()) == width_, Errc::invalid_argument,
              "grid map: rows have unequal length");
      for (int x = 0; x < width_; ++x) {
        const char c = rows[y][static_cast<std::size_t>(x)];
        const int id = y * width_ + x;
        switch (c) {
          case '#': wall_[static_cast<std::size_t>(id)] = true; break;
          case '.': break;
          case 'S':
            start_ = id;
            ++starts;
            break;
          case 'G':
            goal_ = id;
            ++goals;
            break;
          default:
            fail(Errc::invalid_argument, std::string("grid map: unexpected character '") + c + "'");
        }
      }
    }
    require(starts == 1, Errc::invalid_argument, "grid map: need exactly one start cell");
    require(goals == 1, Errc::invalid_argument, "grid map: need exactly one goal cell");
    require(start_ != goal_, Errc::invalid_argument, "grid map: start and goal must differ");
  }
  pos_ = (spec_.kind == EnvKind::chain) ? 0 : start_;
}

Observation Environment::reset(std::uint64_t seed) {
  noise_rng_ = Rng(Rng::derive(seed, kNoiseStream));
  return reset();
}

Observation Environment::reset() {
  pos_ = (spec_.kind == EnvKind::chain) ? 0 : start_;
  steps_in_episode_ = 0;
  return observe();
}

Observation Environment::observe() {
  Observation obs{featurize(pos_), pos_};
  add_noise(obs.features, spec_.noise_sigma, spec_.noise_dims, spec_.noise_append, noise_rng_);
  return obs;
}

bool Environment::grid_wall(int x, int y) const {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return true;
  return wall_[static_cast<std::size_t>(y * width_ + x)];
}

Environment::StepResult Environment::step(int action) {
  require(action >= 0 && action < action_count(), Errc::invalid_argument,
          "step: action index out of range");
  bool at_goal = false;
  if (spec_.kind == EnvKind::chain) {
    // 0 = left, 1 = right
    pos_ += (action == 1) ? 1 : -1;
    pos_ = std::max(0, std::min(pos_, static_cast<int>(spec_.chain_length) - 1));
    at_goal = (pos_ == static_cast<int>(spec_.chain_length) - 1);
  } else {
    // 0 = up, 1 = down, 2 = left, 3 = right; walls and edges block
    int x = pos_ % width_;
    int y = pos_ / width_;
    int nx = x, ny = y;
    switch (action) {
      case 0: ny = y - 1; break;
      case 1: ny = y + 1; break;
      case 2: nx = x - 1; break;
      case 3: nx = x + 1; break;
    }
    if (!grid_wall(nx, ny)) pos_ = ny * width_ + nx;
    at_goal = (pos_ == goal_);
  }
  ++steps_in_episode_;
  StepResult result;
  result.reward = at_goal ? 1.0 : 0.0;
  result.done = at_goal || steps_in_episode_ >= spec_.resolved_episode_cap();
  result.obs = observe();
  return result;
}

std::vector<double> Environment::featurize(int raw_state) const {
  auto norm = [](int v, int extent) {
    if (extent <= 1) return 0.0;
    return 2.0 * static_cast<double>(v) / static_cast<double>(extent - 1) - 1.0;
  };
  if (spec_.kind == EnvKind::chain) {
    const int length = static_cast<int>(spec_.chain_length);
    require(raw_state >= 0 && raw_state < length, Errc::invalid_argument,
            "featurize: state id out of range");
    const int blocks = (length + kBlockSize - 1) / kBlockSize;
    std::vector<double> f(2 + static_cast<std::size_t>(blocks), 0.0);
    f[0] = norm(raw_state, length);
    f[1] = 0.0;
    f[2 + static_cast<std::size_t>(raw_state / kBlockSize)] = 1.0;
    return f;
  }
  require(raw_state >= 0 && raw_state < width_ * height_, Errc::invalid_argument,
          "featurize: state id out of range");
  const int x = raw_state % width_;
  const int y = raw_state / width_;
  const int bx = (width_ + kBlockSize - 1) / kBlockSize;
  const int by = (height_ + kBlockSize - 1) / kBlockSize;
  std::vector<double> f(2 + static_cast<std::size_t>(bx) * by, 0.0);
  f[0] = norm(x, width_);
  f[1] = norm(y, height_);
  f[2 + static_cast<std::size_t>((y / kBlockSize) * bx + (x / kBlockSize))] = 1.0;
  return f;
}

std::size_t Environment::base_feature_dim() const {
  if (spec_.kind == EnvKind::chain) {
    const int blocks =
        (static_cast<int>(spec_.chain_length) + kBlockSize - 1) / kBlockSize;
    return 2 + static_cast<std::size_t>(blocks);
  }
  const int bx = (width_ + kBlockSize - 1) / kBlockSize;
  const int by = (height_ + kBlockSize - 1) / kBlockSize;
  return 2 + static_cast<std::size_t>(bx) * by;
}

std::size_t Environment::feature_dim() const {
  std::size_t dim = base_feature_dim();
  if (spec_.noise_sigma > 0.0 && spec_.noise_append) dim += spec_.noise_dims;
  return dim;
}

int Environment::action_count() const { return spec_.kind == EnvKind::chain ? 2 : 4; }

std::size_t Environment::state_count() const {
  if (spec_.kind == EnvKind::chain) return spec_.chain_length;
  std::size_t floor_cells = 0;
  for (bool w : wall_)
    if (!w) ++floor_cells;
  return floor_cells;
}

}  // namespace tirlab
