#pragma once

// A complete experiment invocation: experiment name, grid, output settings.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "wclab/experiments.hpp"
#include "wclab/report.hpp"

namespace wclab {

struct RunConfig {
  std::string experiment;
  GridSpec grid;
  std::filesystem::path out_dir = "reports";
  std::vector<std::string> formats{"json", "csv"};
  unsigned jobs = 1;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

const std::vector<std::string>& experiment_names();
bool is_experiment(const std::string& name);

// Grid defaults for a named experiment. Throws ValidationError for unknown names.
GridSpec default_grid(const std::string& experiment);
RunConfig default_config(const std::string& experiment);

// The reproducibility-relevant part of a config: experiment and grid. Output
// directory, formats and job count do not change report content.
nlohmann::json to_json(const RunConfig& config);
// Fields absent from j take the experiment defaults.
RunConfig config_from_json(const nlohmann::json& j);

// Structural checks that do not depend on the experiment body (names,
// formats, resolution, jobs). Throws ValidationError.
void validate(const RunConfig& config);

// Hash of to_json(config), used in report file names.
std::string config_hash(const RunConfig& config);

// Runs the experiment; the report's parameter block holds to_json(config).
ExperimentReport dispatch(const RunConfig& config);

}  // namespace wclab
