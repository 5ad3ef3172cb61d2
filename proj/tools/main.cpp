#include <cstdlib>
#include <iostream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "viscostring/config.hpp"
#include "viscostring/errors.hpp"
#include "viscostring/harness.hpp"
#include "viscostring/parallel.hpp"

namespace {

int thread_count_from_env() {
  const char* env = std::getenv("VISCOSTRING_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  try {
    const int value = std::stoi(env);
    if (value < 0) throw std::invalid_argument("negative");
    return value;
  } catch (const std::exception&) {
    throw viscostring::ConfigError(std::string("VISCOSTRING_THREADS is not a count: ") + env);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Viscoelastic string simulation and boundary steering"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  int threads = -1;
  const std::pair<const char*, const char*> commands[] = {
      {"simulate", "Run a control through the modal solver"},
      {"steer", "Synthesize a minimal-norm control for velocity/stress targets"},
      {"pair", "Solve the finite deformation/stress pair problem"},
      {"diagnose", "Frame bounds, closeness and mode trajectories"},
      {"verify", "Numerical checks of the asymptotic estimates"},
  };
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "Experiment config file")->required();
    sub->add_option("--out", out_dir, "Output directory (overrides [output] dir)");
    sub->add_option("--threads", threads, "Worker threads, 0 = all cores")
        ->check(CLI::NonNegativeNumber);
  }
  CLI11_PARSE(app, argc, argv);

  try {
    const viscostring::Task task =
        viscostring::task_from_string(app.get_subcommands().front()->get_name());
    const viscostring::ExperimentConfig config = viscostring::load_config(config_path);
    viscostring::set_max_threads(threads >= 0 ? threads : thread_count_from_env());
    const std::string dir = out_dir.empty() ? config.output_dir : out_dir;
    const viscostring::RunResult result = viscostring::run(task, config, dir);
    if (result.exit_code != viscostring::kExitOk) {
      std::cerr << "viscostring: " << result.message << "\n";
      return result.exit_code;
    }
    std::cout << "wrote " << result.files.size() + 2 << " files to " << dir << "\n";
    return viscostring::kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "viscostring: " << e.what() << "\n";
    return viscostring::exit_code_for(e);
  }
}
