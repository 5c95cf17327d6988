#include <iostream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "critlab/error.hpp"
#include "critlab/run_config.hpp"
#include "critlab/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"critlab: critical coupled elliptic systems on a ball"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::size_t grid = 0;
  std::uint64_t seed = 0;
  const std::pair<const char*, const char*> modes[] = {
      {"constants", "admissibility window and explicit thresholds"},
      {"solve", "least level m_i, C_I or A with its minimizer profile"},
      {"verify", "certify the energy inequalities with margins"},
      {"expansion", "integrals of cutoff bubbles and their fitted slopes"},
      {"sweep", "repeat solve over a list of coupling or lambda values"}};
  for (const auto& [mode, help] : modes) {
    CLI::App* sub = app.add_subcommand(mode, help);
    sub->add_option("--config", config_path, "run config (JSON)");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--grid", grid, "number of grid intervals");
    sub->add_option("--seed", seed, "random seed");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : critlab::exit_code::config_error;
  }
  const std::string mode = app.get_subcommands().front()->get_name();
  const CLI::App* sub = app.get_subcommands().front();

  critlab::RunConfig config;
  try {
    config = config_path.empty() ? critlab::default_run_config() : critlab::load_run_config(config_path);
  } catch (const critlab::InvalidInput& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return critlab::exit_code::config_error;
  }
  config.mode = mode;
  if (sub->count("--out")) config.output = out_dir;
  if (sub->count("--seed")) config.seed = seed;
  if (sub->count("--grid")) {
    config.solve.intervals = grid;
    config.expansion.intervals = grid;
  }

  const critlab::RunOutcome outcome = critlab::run(config, std::cout);
  if (outcome.exit_code == critlab::exit_code::config_error) {
    std::cerr << "config error: " << outcome.message << "\n";
  } else if (outcome.exit_code == critlab::exit_code::numerical_failure) {
    std::cerr << "numerical failure: " << outcome.message << "\n";
  } else {
    std::cout << "wrote " << outcome.directory << "\n";
  }
  return outcome.exit_code;
}
