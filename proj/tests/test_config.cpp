#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "tirlab/config.hpp"
#include "tirlab/error.hpp"

using namespace tirlab;

namespace {

// Writes content to a fresh temp file and returns its path.
class TempFile {
public:
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("tirlab_cfg_" + std::to_string(::getpid()) + "_" + std::to_string(counter++)))
                .string();
    std::ofstream out(path_);
    out << content;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

private:
  std::string path_;
};

}  // namespace

TEST_SUITE_BEGIN("config");

TEST_CASE("defaults match the documented baseline") {
  const ExperimentConfig cfg;
  CHECK(cfg.get("env") == "chain");
  CHECK(cfg.get("engine") == "tir");
  CHECK(cfg.get("n") == "5");
  CHECK(cfg.get("j") == "4");
  CHECK(cfg.get("k") == "2");
  CHECK(cfg.get("lambda") == "0.001");
  CHECK(cfg.get("alpha") == "1");
  CHECK(cfg.get("beta") == "1");
  CHECK(cfg.get("gamma") == "0.99");
  CHECK(cfg.get("U") == "150");
  CHECK(cfg.get("T") == "400");
  CHECK(cfg.get("N") == "256");
  cfg.validate();
}

TEST_CASE("set and get round-trip") {
  ExperimentConfig cfg;
  cfg.set("lambda", "0.01");
  cfg.set("U", "20");
  cfg.set("engine", "rnd");
  cfg.set("seed", "99");
  CHECK(cfg.lambda == doctest::Approx(0.01));
  CHECK(cfg.rounds == 20);
  CHECK(cfg.engine == "rnd");
  CHECK(cfg.seed == 99);
  CHECK(cfg.get("lambda") == "0.01");
  CHECK(cfg.get("seed") == "99");
}

TEST_CASE("unknown keys and bad values are rejected") {
  ExperimentConfig cfg;
  CHECK_THROWS_AS(cfg.set("bogus", "1"), Error);
  CHECK_THROWS_AS((void)cfg.get("bogus"), Error);
  CHECK_THROWS_AS(cfg.set("lambda", "abc"), Error);
  CHECK_THROWS_AS(cfg.set("lambda", "0.1x"), Error);
  CHECK_THROWS_AS(cfg.set("U", "-3"), Error);
  CHECK_THROWS_AS(cfg.set("seed", "12.5"), Error);
}

TEST_CASE("load parses comments, blanks and whitespace") {
  const TempFile file(
      "# chain baseline\n"
      "env = chain\n"
      "\n"
      "U = 12   # short run\n"
      "  lambda=0.002\n"
      "engine = pred_error\n");
  ExperimentConfig cfg;
  cfg.load(file.path());
  CHECK(cfg.env == "chain");
  CHECK(cfg.rounds == 12);
  CHECK(cfg.lambda == doctest::Approx(0.002));
  CHECK(cfg.engine == "pred_error");
}

TEST_CASE("load rejects malformed files") {
  ExperimentConfig cfg;
  CHECK_THROWS_AS(cfg.load("/no/such/config.cfg"), Error);

  const TempFile missing_eq("env chain\n");
  CHECK_THROWS_AS(cfg.load(missing_eq.path()), Error);

  const TempFile unknown("flux_capacitor = 1\n");
  CHECK_THROWS_AS(cfg.load(unknown.path()), Error);
}

TEST_CASE("steps override rounds up to whole rounds") {
  ExperimentConfig cfg;
  cfg.set("T", "400");
  CHECK(cfg.resolved_rounds() == 150);
  cfg.set("steps", "1000");
  CHECK(cfg.resolved_rounds() == 3);
  cfg.set("steps", "800");
  CHECK(cfg.resolved_rounds() == 2);
}

TEST_CASE("noise sigma resolves per environment family") {
  ExperimentConfig cfg;
  CHECK(cfg.resolved_noise_sigma() == 0.0);
  cfg.set("env", "noisy-grid");
  CHECK(cfg.resolved_noise_sigma() == doctest::Approx(0.25));
  cfg.set("noise_sigma", "0.1");
  CHECK(cfg.resolved_noise_sigma() == doctest::Approx(0.1));

  const EnvSpec spec = cfg.env_spec();
  CHECK(spec.kind == EnvKind::grid);
  CHECK(spec.noise_sigma == doctest::Approx(0.1));
  CHECK_FALSE(spec.map_text.empty());
}

TEST_CASE("policy backend resolution") {
  ExperimentConfig cfg;
  CHECK(cfg.resolved_backend() == PolicyBackend::tabular);
  cfg.set("env", "noisy-chain");
  CHECK(cfg.resolved_backend() == PolicyBackend::linear);
  cfg.set("policy", "tabular");
  CHECK(cfg.resolved_backend() == PolicyBackend::tabular);
  cfg.set("policy", "linear");
  cfg.set("env", "chain");
  CHECK(cfg.resolved_backend() == PolicyBackend::linear);
}

TEST_CASE("engine config carries the scheduled k_ini") {
  ExperimentConfig cfg;
  cfg.set("k_mode", "scheduled");
  cfg.set("k_ini", "3");
  cfg.set("k", "2");
  const RewardEngineConfig engine = cfg.engine_config();
  CHECK(engine.k_mode.scheduled);
  CHECK(engine.k_mode.value == doctest::Approx(3.0));

  cfg.set("k_mode", "fixed");
  CHECK_FALSE(cfg.engine_config().k_mode.scheduled);
  CHECK(cfg.engine_config().k_mode.value == doctest::Approx(2.0));
}

TEST_CASE("buffer capacity defaults to 50 rollouts") {
  ExperimentConfig cfg;
  cfg.set("T", "100");
  CHECK(cfg.resolved_buffer_capacity() == 5000);
  cfg.set("buffer_capacity", "123");
  CHECK(cfg.resolved_buffer_capacity() == 123);
}

TEST_CASE("validate rejects out-of-range settings") {
  const auto broken = [](const char* key, const char* value) {
    ExperimentConfig cfg;
    cfg.set(key, value);
    return cfg;
  };
  CHECK_THROWS_AS(broken("env", "atari").validate(), Error);
  CHECK_THROWS_AS(broken("engine", "icm").validate(), Error);
  CHECK_THROWS_AS(broken("k_mode", "linear").validate(), Error);
  CHECK_THROWS_AS(broken("policy", "mlp").validate(), Error);
  CHECK_THROWS_AS(broken("n", "1").validate(), Error);
  CHECK_THROWS_AS(broken("j", "0").validate(), Error);
  CHECK_THROWS_AS(broken("U", "0").validate(), Error);
  CHECK_THROWS_AS(broken("gamma", "0").validate(), Error);
  CHECK_THROWS_AS(broken("gamma", "1.5").validate(), Error);
  CHECK_THROWS_AS(broken("lambda", "0").validate(), Error);
  CHECK_THROWS_AS(broken("eps_frac", "0").validate(), Error);
  CHECK_THROWS_AS(broken("chain_length", "2").validate(), Error);

  ExperimentConfig eps;
  eps.set("eps_start", "0.1");
  eps.set("eps_final", "0.5");
  CHECK_THROWS_AS(eps.validate(), Error);
}

TEST_SUITE_END();
