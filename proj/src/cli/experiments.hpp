#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"

namespace afdm::cli {

struct RunReport {
  std::vector<std::filesystem::path> files;  // CSVs then the sidecar
};

// Throws ValidationError when `subcommand` cannot run config.kind.
void check_subcommand(const std::string& subcommand, ExperimentKind kind);

// Validates, runs and writes <name>_*.csv plus <name>.meta.cfg into out_dir.
RunReport run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);

// Filename-safe rendering of a c2 entry: "1/Nc^2" -> "1_Nc_2".
std::string c2_slug(const std::string& c2_text);

}  // namespace afdm::cli
