// wclab: run one experiment, write its reports, print a summary.
//
//   wclab [run] <experiment> [--alpha A]... [--p P]... [--M L]... [--N R]
//         [--nmax X] [--k A..B] [--seeds A..B] [--out DIR] [--format json,csv]
//         [--jobs J] [--seed-base S] [--config FILE]
//
// Exit status: 0 all checks pass, 3 some check failed, 2 usage or validation
// error, 1 runtime or numeric error.

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wclab/errors.hpp"
#include "wclab/run_config.hpp"

namespace {

constexpr int kExitChecksFailed = 3;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 1;

std::string join_names() {
  std::string out;
  for (const auto& n : wclab::experiment_names()) out += (out.empty() ? "" : ", ") + n;
  return out;
}

nlohmann::json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw wclab::ValidationError("cannot open config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw wclab::ValidationError("config file '" + path + "': " + e.what());
  }
}

void print_summary(const wclab::ExperimentReport& report, const std::vector<std::filesystem::path>& files) {
  std::cout << report.name() << ": " << report.rows().size() << " rows\n";
  for (const auto& [k, v] : report.summary()) std::cout << "  " << k << " = " << wclab::format_double(v) << "\n";
  std::cout << "checks:\n";
  for (const auto& c : report.checks()) {
    std::cout << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name << ": " << wclab::format_double(c.value)
              << " " << wclab::relation_symbol(c.relation) << " " << wclab::format_double(c.threshold) << "\n";
  }
  for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walsh-Cesaro experiment runner"};
  std::vector<std::string> words;
  std::vector<double> alphas, ps;
  std::vector<int> levels;
  int bits = 0;
  std::size_t n_max = 0;
  std::string k_range, seed_range, out_dir, formats, config_path;
  unsigned jobs = 0;
  std::uint64_t seed_base = 0;

  app.add_option("experiment", words, "[run] <experiment>: " + join_names())->required();
  auto* o_alpha = app.add_option("--alpha", alphas, "summability order (repeatable)");
  auto* o_p = app.add_option("--p", ps, "Hardy exponent (repeatable)");
  auto* o_m = app.add_option("--M", levels, "atom or localization level (repeatable)");
  auto* o_n = app.add_option("--N", bits, "resolution in bits");
  auto* o_nmax = app.add_option("--nmax", n_max, "largest order n");
  auto* o_k = app.add_option("--k", k_range, "counterexample index range A..B");
  auto* o_seeds = app.add_option("--seeds", seed_range, "seed range A..B");
  auto* o_out = app.add_option("--out", out_dir, "output directory (default $WCLAB_OUT or ./reports)");
  auto* o_format = app.add_option("--format", formats, "comma-separated: json,csv");
  auto* o_jobs = app.add_option("--jobs", jobs, "worker threads");
  auto* o_seed_base = app.add_option("--seed-base", seed_base, "base seed mixed into every stream");
  app.add_option("--config", config_path, "JSON run configuration; flags override it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (!words.empty() && words.front() == "run") words.erase(words.begin());
  if (words.size() != 1) {
    std::cerr << "error: expected exactly one experiment name (" << join_names() << ")\n";
    return kExitUsage;
  }

  wclab::RunConfig config;
  try {
    nlohmann::json file = nlohmann::json::object();
    if (!config_path.empty()) file = read_config_file(config_path);
    if (file.contains("experiment") && file.at("experiment") != words.front()) {
      std::cerr << "note: config file experiment overridden by '" << words.front() << "'\n";
    }
    file["experiment"] = words.front();
    config = wclab::config_from_json(file);
    if (!file.contains("out")) {
      if (const char* env = std::getenv("WCLAB_OUT"); env != nullptr && *env != '\0') config.out_dir = env;
    }

    auto& g = config.grid;
    if (*o_alpha) g.alphas = alphas;
    if (*o_p) g.ps = ps;
    if (*o_m) g.levels = levels;
    if (*o_n) g.resolution_bits = bits;
    if (*o_nmax) g.n_max = n_max;
    if (*o_seed_base) g.seed_base = seed_base;
    if (*o_k) {
      const auto r = wclab::parse_range(k_range);
      g.k_first = static_cast<int>(r.first);
      g.k_last = static_cast<int>(r.last);
    }
    if (*o_seeds) {
      const auto r = wclab::parse_range(seed_range);
      if (r.first < 0) throw wclab::ValidationError("seeds must be non-negative");
      g.seed_first = static_cast<std::uint64_t>(r.first);
      g.seed_last = static_cast<std::uint64_t>(r.last);
    }
    if (*o_out) config.out_dir = out_dir;
    if (*o_format) {
      config.formats.clear();
      std::stringstream ss(formats);
      for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) config.formats.push_back(item);
      }
    }
    if (*o_jobs) config.jobs = jobs;
    wclab::validate(config);
  } catch (const wclab::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const wclab::ExperimentReport report = wclab::dispatch(config);
    const auto files = wclab::write_report(report, config.out_dir, config.formats, wclab::config_hash(config));
    print_summary(report, files);
    return report.all_passed() ? 0 : kExitChecksFailed;
  } catch (const wclab::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
