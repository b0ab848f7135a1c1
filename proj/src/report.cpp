#include "wclab/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

#include "wclab/errors.hpp"

namespace wclab {

namespace {

void require_finite(double v, const std::string& what) {
  if (!std::isfinite(v)) throw NumericError("non-finite value in " + what);
}

bool compare(double value, Relation relation, double threshold) {
  switch (relation) {
    case Relation::less:
      return value < threshold;
    case Relation::less_equal:
      return value <= threshold;
    case Relation::equal:
      return value == threshold;
  }
  return false;
}

}  // namespace

ExperimentReport::ExperimentReport(std::string name, std::vector<std::string> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {}

void ExperimentReport::add_row(std::vector<double> row) {
  if (row.size() != columns_.size()) {
    throw std::logic_error("row width " + std::to_string(row.size()) + " does not match " +
                           std::to_string(columns_.size()) + " columns in " + name_);
  }
  for (std::size_t i = 0; i < row.size(); ++i) require_finite(row[i], name_ + "." + columns_[i]);
  rows_.push_back(std::move(row));
}

void ExperimentReport::set_summary(const std::string& key, double value) {
  require_finite(value, name_ + " summary " + key);
  summary_[key] = value;
}

const ThresholdCheck& ExperimentReport::add_check(std::string name, double value,
                                                  Relation relation, double threshold) {
  require_finite(value, name_ + " check " + name);
  checks_.push_back({std::move(name), value, relation, threshold, compare(value, relation, threshold)});
  return checks_.back();
}

double ExperimentReport::summary_value(const std::string& key) const {
  const auto it = summary_.find(key);
  if (it == summary_.end()) throw std::out_of_range("no summary entry " + key + " in " + name_);
  return it->second;
}

bool ExperimentReport::all_passed() const {
  for (const auto& c : checks_) {
    if (!c.passed) return false;
  }
  return true;
}

std::string_view relation_symbol(Relation r) {
  switch (r) {
    case Relation::less:
      return "<";
    case Relation::less_equal:
      return "<=";
    case Relation::equal:
      return "==";
  }
  return "?";
}

std::string format_double(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

nlohmann::json to_json(const ExperimentReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks()) {
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"relation", std::string(relation_symbol(c.relation))},
                      {"threshold", c.threshold},
                      {"passed", c.passed}});
  }
  nlohmann::json summary = nlohmann::json::object();
  for (const auto& [key, value] : report.summary()) summary[key] = value;
  return {{"name", report.name()},
          {"library_version", std::string(kLibraryVersion)},
          {"parameters", report.parameters()},
          {"columns", report.columns()},
          {"rows", report.rows()},
          {"summary", summary},
          {"checks", checks},
          {"all_passed", report.all_passed()}};
}

std::string to_json_text(const ExperimentReport& report) { return to_json(report).dump(2) + "\n"; }

std::string to_csv(const ExperimentReport& report) {
  std::string out;
  for (std::size_t i = 0; i < report.columns().size(); ++i) {
    if (i > 0) out += ',';
    out += report.columns()[i];
  }
  out += '\n';
  for (const auto& row : report.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string content_hash(const nlohmann::json& value) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : value.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
    h >>= 4;
  }
  return out;
}

std::vector<std::filesystem::path> write_report(const ExperimentReport& report,
                                                const std::filesystem::path& dir,
                                                const std::vector<std::string>& formats,
                                                std::string_view hash) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const std::string stem = report.name() + "-" + std::string(hash);
  for (const auto& format : formats) {
    std::string body;
    if (format == "json") {
      body = to_json_text(report);
    } else if (format == "csv") {
      body = to_csv(report);
    } else {
      throw ValidationError("unknown report format '" + format + "'");
    }
    const auto path = dir / (stem + "." + format);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << body;
    if (!out) throw std::runtime_error("failed writing " + path.string());
    written.push_back(path);
  }
  return written;
}

}  // namespace wclab
