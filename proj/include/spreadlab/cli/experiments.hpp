#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spreadlab/cli/config.hpp"
#include "spreadlab/cli/csv.hpp"

namespace spreadlab::cli {

struct ExperimentResult {
  std::string experiment;
  std::vector<CsvTable> tables;
  std::vector<std::pair<std::string, std::string>> summary;
  std::string invariant;  // name of the pass/fail line
  bool passed = false;
};

const std::vector<std::string>& experiment_names();

/// Reads `experiment` and the keys it needs, rejects leftovers, then runs.
/// Config problems surface as ConfigError before any computation starts.
ExperimentResult run_experiment(Config& cfg);

}  // namespace spreadlab::cli
