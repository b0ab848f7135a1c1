#include "wclab/cesaro.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wclab/errors.hpp"

namespace wclab {

namespace {

constexpr double kRecurrenceTolerance = 1e-10;

std::vector<double> recurrence(double alpha, std::size_t n_max) {
  std::vector<double> a(n_max + 1);
  a[0] = 1.0;
  for (std::size_t k = 1; k <= n_max; ++k) {
    a[k] = a[k - 1] * (alpha + static_cast<double>(k)) / static_cast<double>(k);
  }
  return a;
}

// A_n^alpha = sum_{k=0}^{n} A_k^{alpha-1}, with the alpha-1 sequence built
// independently and summed with Neumaier compensation.
void check_predecessor_sums(double alpha, std::span<const double> table) {
  const double beta = alpha - 1.0;
  double term = 1.0;
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t n = 0; n < table.size(); ++n) {
    if (n > 0) term *= (beta + static_cast<double>(n)) / static_cast<double>(n);
    const double t = sum + term;
    carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    const double total = sum + carry;
    if (std::abs(total - table[n]) > kRecurrenceTolerance * std::abs(table[n])) {
      throw NumericError("A^alpha recurrence check failed at n = " + std::to_string(n) +
                         " for alpha = " + std::to_string(alpha));
    }
  }
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::domain_error("(C, alpha) means need alpha in (0, 1], got " + std::to_string(alpha));
  }
}

}  // namespace

CesaroCoeffTable::CesaroCoeffTable(double alpha, std::size_t n_max) : alpha_(alpha) {
  if (!(alpha > -1.0)) {
    throw UndefinedCoefficient("A_n^alpha is undefined for alpha <= -1, got " +
                               std::to_string(alpha));
  }
  if (alpha > 1.0) {
    throw UndefinedCoefficient("coefficient tables support alpha in (-1, 1], got " +
                               std::to_string(alpha));
  }
  values_ = recurrence(alpha, n_max);
  check_predecessor_sums(alpha, values_);
}

CesaroCoeffTable cesaro_coeffs(double alpha, std::size_t n_max) {
  return CesaroCoeffTable(alpha, n_max);
}

CesaroOperator::CesaroOperator(double alpha, std::size_t n_max)
    : order_((require_alpha(alpha), CesaroCoeffTable(alpha, n_max))),
      predecessor_(alpha - 1.0, n_max) {}

void CesaroOperator::check_order(std::size_t n, std::size_t cells) const {
  if (n < 1 || n > cells) {
    throw OrderOutOfRange("order " + std::to_string(n) + " outside [1, " + std::to_string(cells) +
                          "]");
  }
  if (n > n_max()) {
    throw OrderOutOfRange("order " + std::to_string(n) + " exceeds the operator's table size " +
                          std::to_string(n_max()));
  }
}

double CesaroOperator::multiplier(std::size_t n, std::size_t j) const {
  if (j >= n) return 0.0;
  return order_[n - 1 - j] / order_[n];
}

void CesaroOperator::fill_mean_coeffs(const CoeffVector& c, std::size_t n,
                                      std::span<double> out) const {
  const double inv = 1.0 / order_[n];
  for (std::size_t j = 0; j < n; ++j) out[j] = c[j] * (order_[n - 1 - j] * inv);
  std::fill(out.begin() + static_cast<std::ptrdiff_t>(n), out.end(), 0.0);
}

CoeffVector CesaroOperator::kernel_coeffs(std::size_t n, Resolution res) const {
  check_order(n, res.cells());
  CoeffVector out(res);
  const double inv = 1.0 / order_[n];
  for (std::size_t j = 0; j < n; ++j) out[j] = order_[n - 1 - j] * inv;
  return out;
}

StepFunction CesaroOperator::kernel(std::size_t n, Resolution res) const {
  return synthesize(kernel_coeffs(n, res));
}

CoeffVector CesaroOperator::mean_coeffs(const CoeffVector& c, std::size_t n) const {
  check_order(n, c.size());
  CoeffVector out(c.resolution());
  fill_mean_coeffs(c, n, out.coeffs());
  return out;
}

StepFunction CesaroOperator::mean(const CoeffVector& c, std::size_t n, MeanMode mode) const {
  if (mode == MeanMode::direct) return direct_mean(c, n);
  return synthesize(mean_coeffs(c, n));
}

StepFunction CesaroOperator::direct_mean(const CoeffVector& c, std::size_t n) const {
  check_order(n, c.size());
  const Resolution res = c.resolution();
  const std::size_t cells = res.cells();
  std::vector<double> partial(cells, 0.0);
  std::vector<double> acc(cells, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    const double coeff = c[k - 1];
    const double weight = predecessor_[n - k];
    for (PointIndex x = 0; x < cells; ++x) {
      partial[x] += coeff * walsh_eval(k - 1, x);
      acc[x] += weight * partial[x];
    }
  }
  const double inv = 1.0 / order_[n];
  for (double& v : acc) v *= inv;
  return StepFunction(res, std::move(acc));
}

std::vector<StepFunction> CesaroOperator::direct_means(const CoeffVector& c,
                                                       std::size_t n_last) const {
  check_order(n_last, c.size());
  const Resolution res = c.resolution();
  const std::size_t cells = res.cells();

  // partials[(k-1) * cells + x] = S_k f(x)
  std::vector<double> partials(n_last * cells);
  std::vector<double> running(cells, 0.0);
  for (std::size_t k = 1; k <= n_last; ++k) {
    const double coeff = c[k - 1];
    double* row = partials.data() + (k - 1) * cells;
    for (PointIndex x = 0; x < cells; ++x) {
      running[x] += coeff * walsh_eval(k - 1, x);
      row[x] = running[x];
    }
  }

  std::vector<StepFunction> out;
  out.reserve(n_last);
  std::vector<double> acc(cells);
  for (std::size_t n = 1; n <= n_last; ++n) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
      const double weight = predecessor_[n - k];
      const double* row = partials.data() + (k - 1) * cells;
      for (std::size_t x = 0; x < cells; ++x) acc[x] += weight * row[x];
    }
    const double inv = 1.0 / order_[n];
    std::vector<double> values(cells);
    for (std::size_t x = 0; x < cells; ++x) values[x] = acc[x] * inv;
    out.emplace_back(res, std::move(values));
  }
  return out;
}

StepFunction cesaro_kernel(double alpha, std::size_t n, Resolution res) {
  if (n < 1 || n > res.cells()) {
    throw OrderOutOfRange("kernel order " + std::to_string(n) + " outside [1, " +
                          std::to_string(res.cells()) + "]");
  }
  return CesaroOperator(alpha, n).kernel(n, res);
}

StepFunction cesaro_mean(const CoeffVector& c, double alpha, std::size_t n, MeanMode mode) {
  if (n < 1 || n > c.size()) {
    throw OrderOutOfRange("mean order " + std::to_string(n) + " outside [1, " +
                          std::to_string(c.size()) + "]");
  }
  return CesaroOperator(alpha, n).mean(c, n, mode);
}

StepFunction restricted_maximal(const CoeffVector& c, const CesaroOperator& op, std::size_t n_max,
                                double weight_exponent) {
  if (n_max < 1) throw OrderOutOfRange("maximal operator needs n_max >= 1");
  std::vector<double> best(c.size(), 0.0);
  op.for_each_mean(c, n_max, [&](std::size_t n, std::span<const double> mean) {
    const double scale =
        weight_exponent == 0.0 ? 1.0 : std::pow(static_cast<double>(n + 1), -weight_exponent);
    for (std::size_t x = 0; x < best.size(); ++x) {
      best[x] = std::max(best[x], std::abs(mean[x]) * scale);
    }
  });
  return StepFunction(c.resolution(), std::move(best));
}

StepFunction restricted_maximal(const CoeffVector& c, const MaximalSpec& spec) {
  if (spec.n_max < 1 || spec.n_max > c.size()) {
    throw OrderOutOfRange("maximal operator n_max " + std::to_string(spec.n_max) +
                          " outside [1, " + std::to_string(c.size()) + "]");
  }
  return restricted_maximal(c, CesaroOperator(spec.alpha, spec.n_max), spec.n_max,
                            spec.weight_exponent);
}

CoeffVector conjugate_transform(const CoeffVector& c, PointIndex t) {
  const Resolution res = c.resolution();
  if (t >= res.cells()) throw std::invalid_argument("conjugation parameter outside the resolution");
  CoeffVector out = c;
  if (rademacher(0, t) < 0) out[0] = -out[0];
  for (int n = 1; n <= res.bits(); ++n) {
    if (rademacher(n, t) > 0) continue;
    const std::size_t lo = std::size_t{1} << (n - 1);
    const std::size_t hi = std::size_t{1} << n;
    for (std::size_t j = lo; j < hi; ++j) out[j] = -out[j];
  }
  return out;
}

}  // namespace wclab
