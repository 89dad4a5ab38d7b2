#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "afdm/types.hpp"
#include "config.hpp"
#include "experiments.hpp"
#include "summarize.hpp"

namespace {

enum Exit { kOk = 0, kValidation = 1, kRuntime = 2 };

int run(const std::string& subcommand, const std::string& config_path, std::optional<std::uint64_t> seed,
        const std::string& out_dir) {
  auto config = afdm::cli::load_config(config_path);
  afdm::cli::check_subcommand(subcommand, config.kind);
  if (seed) config.seed = *seed;
  const auto report = afdm::cli::run_experiment(config, out_dir);
  for (const auto& f : report.files) std::cout << f.string() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AFDM radar and communication simulator"};
  app.set_version_flag("--version", std::string(AFDM_VERSION));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::vector<std::string> csv_files;

  for (const char* name : {"ambiguity", "range-profile", "ber", "complexity"}) {
    auto* sub = app.add_subcommand(name, std::string("Run the ") + name + " experiment described by a config file");
    sub->add_option("--config", config_path, "Experiment config")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Override the config seed");
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
  }
  auto* summarize = app.add_subcommand("summarize", "Print a text summary of result CSVs");
  summarize->add_option("csv", csv_files, "CSV files written by a run")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  try {
    auto* sub = app.get_subcommands().front();
    if (sub == summarize) {
      for (const auto& f : csv_files) afdm::cli::summarize(f, std::cout);
      return kOk;
    }
    return run(sub->get_name(), config_path, seed, out_dir);
  } catch (const afdm::ValidationError& e) {
    std::cerr << "afdm-sim: invalid input: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "afdm-sim: error: " << e.what() << "\n";
    return kRuntime;
  }
}
