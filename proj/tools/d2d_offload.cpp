// d2d-offload: caching, power, tradeoff and Monte Carlo experiments for a
// cache-enabled D2D cell. See README.md for the configuration format.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "d2d/commands.hpp"
#include "d2d/config.hpp"
#include "d2d/csv.hpp"
#include "d2d/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitSolverError = 3;

struct CommonOptions {
  std::string config_path;
  std::string preset = "paper-2015";
  std::string out_dir;
  long long seed = -1;
  bool plot_data = false;
};

void add_common_options(CLI::App* sub, CommonOptions& options) {
  sub->add_option("--config", options.config_path, "key/value configuration file");
  sub->add_option("--preset", options.preset, "named parameter preset")
      ->default_val("paper-2015");
  sub->add_option("--seed", options.seed, "override mc.master_seed");
  sub->add_option("--out", options.out_dir, "output directory");
  sub->add_flag("--plot-data", options.plot_data,
                "also emit two-column .dat files per curve");
}

d2d::ExperimentConfig build_config(const CommonOptions& options) {
  d2d::ExperimentConfig config = d2d::ExperimentConfig::preset(options.preset);
  if (!options.config_path.empty()) config.apply_file(options.config_path);
  if (options.seed >= 0) config.mc.master_seed = static_cast<std::uint64_t>(options.seed);
  if (!options.out_dir.empty()) config.output_dir = options.out_dir;
  for (const std::string& warning : config.validate()) {
    std::cerr << "warning: " << warning << "\n";
  }
  return config;
}

int run_command(const std::string& name, const CommonOptions& options) {
  const d2d::ExperimentConfig config = build_config(options);

  d2d::cli::CommandOutput output;
  if (name == "cache-dist") {
    output = d2d::cli::cmd_cache_dist(config, options.plot_data);
  } else if (name == "power") {
    output = d2d::cli::cmd_power(config, options.plot_data);
  } else if (name == "tradeoff") {
    output = d2d::cli::cmd_tradeoff(config, options.plot_data);
  } else if (name == "simulate") {
    output = d2d::cli::cmd_simulate(config, options.plot_data);
  } else if (name == "figures") {
    output = d2d::cli::cmd_figures(config, options.plot_data);
  } else {
    throw d2d::ConfigError("unknown subcommand " + name);
  }

  // Provenance: the effective configuration fully determines the run.
  output.files.emplace_back("config_used.txt", config.serialize());
  if (!options.config_path.empty()) {
    std::ifstream in(options.config_path, std::ios::binary);
    if (in) {
      std::string original((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
      output.files.emplace_back("config_input.txt", original);
    }
  }

  for (const std::string& path : d2d::cli::write_outputs(config.output_dir, output)) {
    std::cout << path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cache-enabled D2D traffic offloading and helper-energy toolkit"};
  app.require_subcommand(1);

  const char* const kSubcommands[] = {"cache-dist", "power", "tradeoff", "simulate",
                                      "figures"};
  const char* const kDescriptions[] = {
      "optimal caching distribution per sweep value",
      "energy-minimal transmit power over a distance grid",
      "offloading-vs-energy tradeoff across collaboration distances",
      "Monte Carlo validation against the analytic model",
      "bundled figure-preset data files"};
  CommonOptions options[5];
  for (int i = 0; i < 5; ++i) {
    add_common_options(app.add_subcommand(kSubcommands[i], kDescriptions[i]), options[i]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfigError;
  }

  try {
    for (int i = 0; i < 5; ++i) {
      if (app.get_subcommand(kSubcommands[i])->parsed()) {
        return run_command(kSubcommands[i], options[i]);
      }
    }
    std::cerr << "error: no subcommand\n";
    return kExitConfigError;
  } catch (const d2d::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const d2d::QuadratureError& e) {
    std::cerr << "quadrature error: " << e.what() << "\n";
    return kExitSolverError;
  } catch (const d2d::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolverError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverError;
  }
}
