#pragma once

// Desk-scale checks of the (C, alpha) estimates on the dyadic group. Every
// "bounded" statement is operationalized as stabilization across dyadic
// blocks with a fixed percentage threshold, recorded as a ThresholdCheck.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wclab/dyadic.hpp"
#include "wclab/report.hpp"

namespace wclab {

struct GridSpec {
  std::vector<double> alphas;
  std::vector<double> ps;
  std::vector<int> levels;
  std::size_t n_max = 0;  // 0 selects the experiment default (usually 2^N)
  int k_first = 1;
  int k_last = 1;
  std::uint64_t seed_first = 0;
  std::uint64_t seed_last = 0;
  int resolution_bits = Resolution::kDefaultBits;
  std::uint64_t seed_base = 0;

  Resolution resolution() const { return Resolution(resolution_bits); }
  std::size_t seed_count() const { return static_cast<std::size_t>(seed_last - seed_first + 1); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// JSON form used in report parameter blocks and config files. Ranges are
// written "A..B" as on the command line.
nlohmann::json to_json(const GridSpec& grid);
GridSpec grid_from_json(const nlohmann::json& j, GridSpec defaults = {});

struct IntRange {
  long long first = 0;
  long long last = 0;
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

// Accepts "A..B" (inclusive, A <= B) or a single integer "A". Throws ValidationError.
IntRange parse_range(std::string_view text);
std::string format_range(IntRange r);

// Thresholds used by the checks below.
namespace thresholds {
inline constexpr double kKernelBlockGrowth = 0.10;
inline constexpr double kLocalizedGrowthPerLevel = 0.05;
inline constexpr double kTranslationInvariance = 1e-12;
inline constexpr double kWeightedMaximalChange = 0.05;
inline constexpr double kSeriesTail = 0.05;
inline constexpr double kAtomVanishing = 1e-10;
inline constexpr double kSlopeRelative = 0.05;
inline constexpr double kCollapseRelative = 1e-10;
inline constexpr double kModeAgreement = 1e-10;
inline constexpr double kHardyExact = 1e-10;
inline constexpr double kIsometryRelative = 1e-9;
inline constexpr double kTransformEntry = 1e-12;
inline constexpr double kParsevalRelative = 1e-10;
}  // namespace thresholds

// ||K_n^alpha||_1 for n = 1..n_max (default 2^N) and every alpha; compares
// the largest value over the top four complete dyadic blocks with the four
// blocks below them.
ExperimentReport check_kernel_l1(const GridSpec& grid, unsigned jobs = 1);

// Localized kernel integrals over I_M against both bounds, for every level-M
// subcube of the complement partition, n in (2^M, 2^{M+2}) (capped by n_max
// and 2^N).
ExperimentReport check_lemma3(const GridSpec& grid, unsigned jobs = 1);

// ||sup_n |sigma_n a| / (n+1)^{1/p-1-alpha}||_p / ||a||_{H_p} on generated
// atoms, at n_max and n_max / 2.
ExperimentReport run_theorem1a(const GridSpec& grid, unsigned jobs = 1);

// Weak-L_p size of sigma_{2^{2k}+1} f_k relative to ||f_k||_{H_p} and the
// fitted growth rate of its log2 in k.
ExperimentReport run_theorem1b(const GridSpec& grid, unsigned jobs = 1);

// Partial sums of sum_m ||sigma_m a||_p^p / m^{2-(1+alpha)p} on atoms at
// dyadic cut points up to m_max.
ExperimentReport run_theorem2(const GridSpec& grid, unsigned jobs = 1);

// Exact identities: Dirichlet closed form, complement partition,
// conjugation/mean commutation and conjugation invariance of the H_p norm.
ExperimentReport check_identities(const GridSpec& grid, unsigned jobs = 1);

// Fast transform against the O(4^N) definition, round trip and Parseval.
ExperimentReport fwht_selftest(const GridSpec& grid, unsigned jobs = 1);

// Least-squares slope of ys against xs.
double fitted_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace wclab
