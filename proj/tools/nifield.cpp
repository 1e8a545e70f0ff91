#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "nifield/errors.hpp"
#include "report.hpp"
#include "scenarios.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kConfigError = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace nifield;
  CLI::App app{"nifield: verification scenarios for the non-instant field model"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "Print the available scenarios");

  auto* run = app.add_subcommand("run", "Run a scenario and write report.json plus CSV data");
  std::string scenario;
  std::string config_file;
  std::string out_dir;
  std::uint64_t seed = 0;
  run->add_option("--scenario", scenario, "Scenario name (see `list`)")->required();
  run->add_option("--config", config_file, "key = value config file")->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (falls back to $NIFIELD_OUT_DIR)");
  auto* seed_opt = run->add_option("--seed", seed, "Seed for random test points (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kConfigError;
  }

  if (*list) {
    for (const auto& name : tools::scenario_names()) std::cout << name << '\n';
    return kPass;
  }

  try {
    tools::ScenarioConfig cfg = config_file.empty() ? tools::ScenarioConfig{} : tools::load_config(config_file);
    tools::validate_scenario(scenario);
    cfg.scenario = scenario;
    if (*seed_opt) cfg.seed = seed;
    if (out_dir.empty()) {
      if (const char* env = std::getenv("NIFIELD_OUT_DIR")) out_dir = env;
    }
    if (out_dir.empty()) throw Error(ErrorCode::ConfigInvalid, "no output directory (--out or NIFIELD_OUT_DIR)");
    cfg.out_dir = out_dir;

    const tools::VerificationReport report = tools::run_scenario(cfg);
    tools::write_outputs(report, cfg.out_dir);
    for (const auto& c : report.checks) {
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << c.value << " expected=" << c.expected
                << " tol=" << c.tol << '\n';
    }
    return report.passed() ? kPass : kCheckFailure;
  } catch (const Error& e) {
    std::cerr << "nifield: " << e.what() << '\n';
    return kConfigError;
  }
}
