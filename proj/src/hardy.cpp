#include "wclab/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "wclab/errors.hpp"
#include "wclab/random.hpp"

namespace wclab {

namespace {

constexpr int kAtomRetries = 8;
constexpr std::uint64_t kAtomStream = 0x61746f6d00000000ULL;  // "atom"
constexpr double kAtomMeanTolerance = 1e-12;

void require_positive_exponent(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw std::invalid_argument("exponent p must be positive and finite");
  }
}

}  // namespace

double lp_norm(const StepFunction& f, double p) {
  require_positive_exponent(p);
  std::vector<double> powered(f.size());
  const auto values = f.values();
  if (p == 1.0) {
    std::transform(values.begin(), values.end(), powered.begin(),
                   [](double v) { return std::abs(v); });
  } else {
    std::transform(values.begin(), values.end(), powered.begin(),
                   [p](double v) { return v == 0.0 ? 0.0 : std::pow(std::abs(v), p); });
  }
  const double integral = pairwise_sum(powered) * f.resolution().cell_measure();
  return p == 1.0 ? integral : std::pow(integral, 1.0 / p);
}

double weak_lp_norm(const StepFunction& f, double p) {
  require_positive_exponent(p);
  std::vector<double> mags(f.size());
  std::transform(f.values().begin(), f.values().end(), mags.begin(),
                 [](double v) { return std::abs(v); });
  std::sort(mags.begin(), mags.end(), std::greater<>());
  const double cell = f.resolution().cell_measure();
  double best = 0.0;
  for (std::size_t i = 0; i < mags.size(); ++i) {
    const double v = mags[i];
    if (v == 0.0) break;
    if (i + 1 < mags.size() && mags[i + 1] == v) continue;  // count every cell with |f| >= v
    const double measure = static_cast<double>(i + 1) * cell;
    best = std::max(best, v * std::pow(measure, 1.0 / p));
  }
  return best;
}

StepFunction maximal_function(const StepFunction& f) {
  const Resolution res = f.resolution();
  const std::size_t cells = res.cells();
  std::vector<double> best(cells);
  std::transform(f.values().begin(), f.values().end(), best.begin(),
                 [](double v) { return std::abs(v); });
  // avg[r] is the mean of f over I_n(r) for residues r < 2^n.
  std::vector<double> avg(f.values().begin(), f.values().end());
  for (int n = res.bits() - 1; n >= 0; --n) {
    const std::size_t half = std::size_t{1} << n;
    for (std::size_t r = 0; r < half; ++r) avg[r] = 0.5 * (avg[r] + avg[r + half]);
    const std::size_t mask = half - 1;
    for (std::size_t x = 0; x < cells; ++x) best[x] = std::max(best[x], std::abs(avg[x & mask]));
  }
  return StepFunction(res, std::move(best));
}

double hardy_norm(const StepFunction& f, double p) { return lp_norm(maximal_function(f), p); }

Atom make_atom(int level, double p, std::uint64_t seed, Resolution res, std::uint64_t seed_base) {
  if (level < 0 || level >= res.bits()) {
    throw std::invalid_argument("atom level must satisfy 0 <= M < N");
  }
  require_positive_exponent(p);
  const Subcube support{level, 0};
  const std::size_t count = std::size_t{1} << (res.bits() - level);
  const double bound = std::exp2(static_cast<double>(level) / p);

  for (int attempt = 0; attempt <= kAtomRetries; ++attempt) {
    Rng rng(seed_base, kAtomStream | static_cast<std::uint64_t>(level),
            seed + static_cast<std::uint64_t>(attempt));
    std::vector<double> draws(count);
    for (double& v : draws) v = rng.uniform(-1.0, 1.0);
    const double mean = pairwise_sum(draws) / static_cast<double>(count);
    double peak = 0.0;
    std::size_t peak_at = 0;
    for (std::size_t i = 0; i < count; ++i) {
      draws[i] -= mean;
      if (std::abs(draws[i]) > peak) {
        peak = std::abs(draws[i]);
        peak_at = i;
      }
    }
    if (peak == 0.0) continue;

    const double scale = bound / peak;
    StepFunction f(res);
    for (std::size_t i = 0; i < count; ++i) {
      const double v = std::clamp(draws[i] * scale, -bound, bound);
      f[support.base | static_cast<PointIndex>(i << level)] = v;
    }
    f[static_cast<PointIndex>(peak_at << level)] = std::copysign(bound, draws[peak_at]);
    return Atom{level, p, std::move(f)};
  }
  throw DegenerateAtom("atom draw degenerate after retries");
}

AtomCheck validate_atom(const Atom& a) {
  AtomCheck check;
  const Resolution res = a.f.resolution();
  const Subcube support{a.level, 0};
  check.sup_bound = std::exp2(static_cast<double>(a.level) / a.p);
  for (PointIndex x = 0; x < res.cells(); ++x) {
    const double v = a.f[x];
    check.sup_norm = std::max(check.sup_norm, std::abs(v));
    if (!support.contains(x) && v != 0.0) ++check.cells_outside_support;
  }
  check.mean_deviation = std::abs(integrate(a.f, support));

  if (check.mean_deviation > kAtomMeanTolerance * check.sup_norm) {
    check.violations.push_back("mean over the support is not zero");
  }
  if (check.sup_norm > check.sup_bound) {
    check.violations.push_back("sup norm exceeds mu(I)^{-1/p}");
  }
  if (check.cells_outside_support > 0) {
    check.violations.push_back("nonzero values outside the support");
  }
  check.valid = check.violations.empty();
  return check;
}

StepFunction counterexample_function(int k, Resolution res) {
  if (k < 0) throw std::invalid_argument("counterexample index must be non-negative");
  if (2 * k + 1 > res.bits()) {
    throw ResolutionTooCoarse("counterexample f_k needs N >= 2k + 1");
  }
  const double height = std::ldexp(1.0, 2 * k);
  const Subcube outer{2 * k, 0};
  const Subcube inner{2 * k + 1, 0};
  StepFunction f(res);
  for (PointIndex x = 0; x < res.cells(); ++x) {
    if (inner.contains(x)) {
      f[x] = height;
    } else if (outer.contains(x)) {
      f[x] = -height;
    }
  }
  return f;
}

}  // namespace wclab
