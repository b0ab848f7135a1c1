#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "wclab/errors.hpp"
#include "wclab/report.hpp"

using namespace wclab;

namespace {
ExperimentReport sample() {
  ExperimentReport r("demo", {"a", "b"});
  r.set_parameters({{"z", 1}, {"alpha", {0.5}}});
  r.add_row({1.0, 0.1});
  r.add_row({2.0, 1.0 / 3.0});
  r.set_summary("max_b", 1.0 / 3.0);
  r.add_check("b bounded", 1.0 / 3.0, Relation::less, 0.5);
  return r;
}
}  // namespace

TEST(Report, RejectsNonFinite) {
  ExperimentReport r("demo", {"a"});
  EXPECT_THROW(r.add_row({std::nan("")}), NumericError);
  EXPECT_THROW(r.set_summary("x", std::numeric_limits<double>::infinity()), NumericError);
  EXPECT_THROW(r.add_row({1.0, 2.0}), std::logic_error);
}

TEST(Report, ChecksEvaluateRelations) {
  ExperimentReport r("demo", {"a"});
  EXPECT_TRUE(r.add_check("lt", 1.0, Relation::less, 2.0).passed);
  EXPECT_FALSE(r.add_check("lt-edge", 2.0, Relation::less, 2.0).passed);
  EXPECT_TRUE(r.add_check("le-edge", 2.0, Relation::less_equal, 2.0).passed);
  EXPECT_TRUE(r.add_check("eq", 0.0, Relation::equal, 0.0).passed);
  EXPECT_FALSE(r.all_passed());
}

TEST(Report, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.0, -2.5}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.1), "0.1");
}

TEST(Report, JsonIsCanonicalAndStable) {
  const std::string a = to_json_text(sample());
  const std::string b = to_json_text(sample());
  EXPECT_EQ(a, b);
  const auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j.at("name"), "demo");
  EXPECT_EQ(j.at("library_version"), std::string(kLibraryVersion));
  EXPECT_EQ(j.at("rows").size(), 2u);
  EXPECT_EQ(j.at("rows")[1][1].get<double>(), 1.0 / 3.0);
  EXPECT_TRUE(j.at("all_passed").get<bool>());
  // keys are sorted
  EXPECT_LT(a.find("\"all_passed\""), a.find("\"checks\""));
  EXPECT_LT(a.find("\"alpha\""), a.find("\"z\""));
}

TEST(Report, CsvHasHeaderAndRows) {
  std::istringstream in(to_csv(sample()));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "a,b");
  std::getline(in, line);
  EXPECT_EQ(line, "1,0.1");
  std::getline(in, line);
  EXPECT_EQ(std::stod(line.substr(line.find(',') + 1)), 1.0 / 3.0);
}

TEST(Report, HashIsFnv1a) {
  // FNV-1a of the dump of an empty object "{}".
  EXPECT_EQ(content_hash(nlohmann::json::object()).size(), 16u);
  EXPECT_EQ(content_hash({{"a", 1}}), content_hash({{"a", 1}}));
  EXPECT_NE(content_hash({{"a", 1}}), content_hash({{"a", 2}}));
}

TEST(Report, WritesRequestedFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "wclab_report_test";
  std::filesystem::remove_all(dir);
  const auto files = write_report(sample(), dir, {"json", "csv"}, "0123456789abcdef");
  ASSERT_EQ(files.size(), 2u);
  EXPECT_EQ(files[0].filename(), "demo-0123456789abcdef.json");
  EXPECT_EQ(files[1].filename(), "demo-0123456789abcdef.csv");
  std::ifstream in(files[0]);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), to_json_text(sample()));
  EXPECT_THROW(write_report(sample(), dir, {"xml"}, "00"), ValidationError);
  std::filesystem::remove_all(dir);
}
