#include "wclab/run_config.hpp"

#include <algorithm>

#include "wclab/errors.hpp"

namespace wclab {

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"kernel-l1", "lemma3",     "theorem1a",    "theorem1b",
                                              "theorem2",  "identities", "fwht-selftest"};
  return names;
}

bool is_experiment(const std::string& name) {
  const auto& names = experiment_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

GridSpec default_grid(const std::string& experiment) {
  GridSpec g;
  if (experiment == "kernel-l1") {
    g.alphas = {0.3, 0.5, 0.8};
    g.resolution_bits = 14;
  } else if (experiment == "lemma3") {
    g.alphas = {0.3, 0.5, 0.8};
    g.levels = {4, 5, 6, 7, 8};
    g.resolution_bits = 13;
  } else if (experiment == "theorem1a" || experiment == "theorem2") {
    g.alphas = {0.5};
    g.ps = {0.6};
    g.levels = {2, 3, 4};
    g.seed_last = 15;
    g.resolution_bits = 12;
  } else if (experiment == "theorem1b") {
    g.alphas = {0.5};
    g.ps = {0.6};
    g.k_first = 3;
    g.k_last = 6;
    g.resolution_bits = 14;
  } else if (experiment == "identities") {
    g.alphas = {0.5};
    g.ps = {0.5, 0.6, 0.9};
    g.seed_last = 63;
    g.resolution_bits = 10;
  } else if (experiment == "fwht-selftest") {
    g.seed_last = 9;
    g.resolution_bits = 10;
  } else {
    throw ValidationError("unknown experiment '" + experiment + "'");
  }
  return g;
}

RunConfig default_config(const std::string& experiment) {
  RunConfig c;
  c.experiment = experiment;
  c.grid = default_grid(experiment);
  return c;
}

nlohmann::json to_json(const RunConfig& config) {
  return {{"experiment", config.experiment}, {"grid", to_json(config.grid)}};
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  if (!j.contains("experiment") || !j.at("experiment").is_string()) {
    throw ValidationError("config needs an \"experiment\" string");
  }
  RunConfig c = default_config(j.at("experiment").get<std::string>());
  if (j.contains("grid")) c.grid = grid_from_json(j.at("grid"), c.grid);
  try {
    if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
    if (j.contains("format")) c.formats = j.at("format").get<std::vector<std::string>>();
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<unsigned>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad config field: ") + e.what());
  }
  return c;
}

void validate(const RunConfig& config) {
  if (!is_experiment(config.experiment)) {
    throw ValidationError("unknown experiment '" + config.experiment + "'");
  }
  if (config.grid.resolution_bits < 1 || config.grid.resolution_bits > Resolution::kMaxBits) {
    throw ValidationError("N must lie in 1.." + std::to_string(Resolution::kMaxBits));
  }
  if (config.formats.empty()) throw ValidationError("at least one output format is required");
  for (const auto& f : config.formats) {
    if (f != "json" && f != "csv") throw ValidationError("unknown format '" + f + "'");
  }
  if (config.jobs == 0) throw ValidationError("jobs must be at least 1");
}

std::string config_hash(const RunConfig& config) { return content_hash(to_json(config)); }

ExperimentReport dispatch(const RunConfig& config) {
  validate(config);
  const GridSpec& g = config.grid;
  const unsigned jobs = config.jobs;
  ExperimentReport report = [&] {
    const std::string& e = config.experiment;
    if (e == "kernel-l1") return check_kernel_l1(g, jobs);
    if (e == "lemma3") return check_lemma3(g, jobs);
    if (e == "theorem1a") return run_theorem1a(g, jobs);
    if (e == "theorem1b") return run_theorem1b(g, jobs);
    if (e == "theorem2") return run_theorem2(g, jobs);
    if (e == "identities") return check_identities(g, jobs);
    return fwht_selftest(g, jobs);
  }();
  report.set_parameters(to_json(config));
  return report;
}

}  // namespace wclab
