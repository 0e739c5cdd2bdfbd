#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tirlab.h"

namespace {

struct ConfigHandle {
  tirlab_config* ptr = nullptr;
  ConfigHandle() : ptr(tirlab_config_new()) {}
  ~ConfigHandle() { tirlab_config_free(ptr); }
  ConfigHandle(const ConfigHandle&) = delete;
  ConfigHandle& operator=(const ConfigHandle&) = delete;
};

int report(tirlab_status status) {
  if (status == TIRLAB_OK) return 0;
  std::cerr << "error: " << tirlab_last_error() << " [" << tirlab_status_name(status) << "]\n";
  return 1;
}

std::string config_value(const tirlab_config* config, const char* key) {
  char buf[256] = {0};
  if (tirlab_config_get(config, key, buf, sizeof(buf)) != TIRLAB_OK) return {};
  return buf;
}

int cmd_run(const std::string& config_path, const std::string& seed, const std::string& engine,
            const std::string& env, const std::string& steps, const std::string& out) {
  ConfigHandle config;
  if (config.ptr == nullptr) return report(TIRLAB_INTERNAL);
  if (auto rc = report(tirlab_config_load(config.ptr, config_path.c_str()))) return rc;
  if (!seed.empty())
    if (auto rc = report(tirlab_config_set(config.ptr, "seed", seed.c_str()))) return rc;
  if (!engine.empty())
    if (auto rc = report(tirlab_config_set(config.ptr, "engine", engine.c_str()))) return rc;
  if (!env.empty())
    if (auto rc = report(tirlab_config_set(config.ptr, "env", env.c_str()))) return rc;
  if (!steps.empty())
    if (auto rc = report(tirlab_config_set(config.ptr, "steps", steps.c_str()))) return rc;
  if (!out.empty())
    if (auto rc = report(tirlab_config_set(config.ptr, "out", out.c_str()))) return rc;

  tirlab_run_log* log = nullptr;
  if (auto rc = report(tirlab_run(config.ptr, &log))) return rc;

  const std::string out_dir = config_value(config.ptr, "out");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory '" << out_dir << "'\n";
    tirlab_log_free(log);
    return 1;
  }
  const std::string csv_path = out_dir + "/" + config_value(config.ptr, "engine") + "_seed" +
                               config_value(config.ptr, "seed") + ".csv";
  if (auto rc = report(tirlab_log_write_csv(log, csv_path.c_str()))) {
    tirlab_log_free(log);
    return rc;
  }

  tirlab_record final_record = {};
  const size_t rows = tirlab_log_size(log);
  if (rows > 0) tirlab_log_record(log, rows - 1, &final_record);
  double total = 0.0;
  tirlab_log_total_ext_return(log, &total);
  std::printf("wrote %s (rounds=%llu steps=%llu ext_return_total=%.3f coverage=%llu)\n",
              csv_path.c_str(), static_cast<unsigned long long>(final_record.round),
              static_cast<unsigned long long>(final_record.steps), total,
              static_cast<unsigned long long>(final_record.coverage));
  tirlab_log_free(log);
  return 0;
}

int cmd_compare(const std::string& config_path, const std::string& engines,
                const std::string& seeds, const std::string& out) {
  ConfigHandle config;
  if (config.ptr == nullptr) return report(TIRLAB_INTERNAL);
  if (auto rc = report(tirlab_config_load(config.ptr, config_path.c_str()))) return rc;
  if (auto rc =
          report(tirlab_compare(config.ptr, engines.c_str(), seeds.c_str(), out.c_str())))
    return rc;
  const std::string summary_path = out + "/summary.csv";
  std::ifstream summary(summary_path);
  std::string line;
  while (std::getline(summary, line)) std::cout << line << '\n';
  std::cout << "wrote " << summary_path << '\n';
  return 0;
}

int cmd_hns(double agent, double random_score, double human) {
  double value = 0.0;
  if (auto rc = report(tirlab_hns(agent, random_score, human, &value))) return rc;
  std::printf("%.10g\n", value);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temporal-inconsistency intrinsic reward lab"};
  app.require_subcommand(1);

  std::string config_path, seed, engine, env, steps, out;
  auto* run = app.add_subcommand("run", "run one experiment and write its CSV log");
  run->add_option("--config", config_path, "experiment config file")->required();
  run->add_option("--seed", seed, "override the run seed");
  run->add_option("--engine", engine, "override the intrinsic reward engine")
      ->check(CLI::IsMember({"tir", "pred_error", "disagreement", "rnd", "none"}));
  run->add_option("--env", env, "override the environment")
      ->check(CLI::IsMember({"chain", "grid", "noisy-chain", "noisy-grid"}));
  run->add_option("--steps", steps, "override the total env-step budget");
  run->add_option("--out", out, "override the output directory");

  std::string engines, seeds, compare_out;
  auto* compare = app.add_subcommand("compare", "run an engines x seeds grid and summarize");
  compare->add_option("--config", config_path, "experiment config file")->required();
  compare->add_option("--engines", engines, "comma-separated engine list")->required();
  compare->add_option("--seeds", seeds, "comma-separated seed list")->required();
  compare->add_option("--out", compare_out, "output directory")->required();

  double agent = 0.0, random_score = 0.0, human = 0.0;
  auto* hns = app.add_subcommand("hns", "human-normalized score");
  hns->add_option("--agent", agent, "agent score")->required();
  hns->add_option("--random", random_score, "random-policy score")->required();
  hns->add_option("--human", human, "human score")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config_path, seed, engine, env, steps, out);
  if (compare->parsed()) return cmd_compare(config_path, engines, seeds, compare_out);
  return cmd_hns(agent, random_score, human);
}
