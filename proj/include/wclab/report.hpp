#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace wclab {

inline constexpr std::string_view kLibraryVersion = "0.1.0";

enum class Relation { less, less_equal, equal };

struct ThresholdCheck {
  std::string name;
  double value = 0.0;
  Relation relation = Relation::less;
  double threshold = 0.0;
  bool passed = false;
};

// Tabular result of one experiment: a parameter block, one row per grid
// point, derived summary scalars and pass/fail threshold checks. Every
// stored number must be finite; add_row / set_summary throw NumericError
// otherwise.
class ExperimentReport {
 public:
  ExperimentReport(std::string name, std::vector<std::string> columns);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
  const std::map<std::string, double>& summary() const noexcept { return summary_; }
  const std::vector<ThresholdCheck>& checks() const noexcept { return checks_; }
  const nlohmann::json& parameters() const noexcept { return parameters_; }

  void set_parameters(nlohmann::json parameters) { parameters_ = std::move(parameters); }
  void add_row(std::vector<double> row);
  void set_summary(const std::string& key, double value);
  const ThresholdCheck& add_check(std::string name, double value, Relation relation,
                                  double threshold);

  double summary_value(const std::string& key) const;
  bool all_passed() const;

 private:
  std::string name_;
  std::vector<std::string> columns_;
  nlohmann::json parameters_ = nlohmann::json::object();
  std::vector<std::vector<double>> rows_;
  std::map<std::string, double> summary_;
  std::vector<ThresholdCheck> checks_;
};

std::string_view relation_symbol(Relation r);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

// Canonical JSON: sorted object keys, shortest round-trip floats, two-space indent.
nlohmann::json to_json(const ExperimentReport& report);
std::string to_json_text(const ExperimentReport& report);
std::string to_csv(const ExperimentReport& report);

// 64-bit FNV-1a of the canonical dump, as 16 lowercase hex digits.
std::string content_hash(const nlohmann::json& value);

// Writes <dir>/<name>-<hash>.{json,csv} for each requested format.
std::vector<std::filesystem::path> write_report(const ExperimentReport& report,
                                                const std::filesystem::path& dir,
                                                const std::vector<std::string>& formats,
                                                std::string_view hash);

}  // namespace wclab
