#include "wclab/walsh.hpp"

#include <stdexcept>
#include <string>

#include "wclab/errors.hpp"

namespace wclab {

CoeffVector::CoeffVector(Resolution res) : res_(res), coeffs_(res.cells(), 0.0) {}

CoeffVector::CoeffVector(Resolution res, std::vector<double> coeffs)
    : res_(res), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != res_.cells()) {
    throw std::invalid_argument("coefficient vector needs " + std::to_string(res_.cells()) +
                                " entries, got " + std::to_string(coeffs_.size()));
  }
}

void fwht_inplace(std::span<double> data) {
  const std::size_t len = data.size();
  if (len == 0 || (len & (len - 1)) != 0) {
    throw std::invalid_argument("fwht length must be a power of two");
  }
  double* v = data.data();
  for (std::size_t h = 1; h < len; h *= 2) {
    for (std::size_t i = 0; i < len; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double x = v[j];
        const double y = v[j + h];
        v[j] = x + y;
        v[j + h] = x - y;
      }
    }
  }
}

CoeffVector analyze(const StepFunction& f) {
  const Resolution res = f.resolution();
  std::vector<double> work(f.values().begin(), f.values().end());
  fwht_inplace(work);
  const double scale = res.cell_measure();
  for (double& x : work) x *= scale;
  return CoeffVector(res, std::move(work));
}

StepFunction synthesize(const CoeffVector& c) {
  std::vector<double> work(c.coeffs().begin(), c.coeffs().end());
  fwht_inplace(work);
  return StepFunction(c.resolution(), std::move(work));
}

StepFunction sample_walsh(std::size_t n, Resolution res) {
  if (n >= res.cells()) {
    throw ResolutionTooCoarse("w_" + std::to_string(n) + " is not resolved at N = " +
                              std::to_string(res.bits()));
  }
  StepFunction f(res);
  for (PointIndex x = 0; x < res.cells(); ++x) f[x] = walsh_eval(n, x);
  return f;
}

StepFunction dirichlet_kernel(std::size_t n, Resolution res) {
  if (n > res.cells()) {
    throw ResolutionTooCoarse("D_" + std::to_string(n) + " needs more than " +
                              std::to_string(res.bits()) + " coordinates");
  }
  if (n < 1) throw OrderOutOfRange("Dirichlet kernel order must be at least 1");
  CoeffVector mask(res);
  for (std::size_t k = 0; k < n; ++k) mask[k] = 1.0;
  return synthesize(mask);
}

StepFunction partial_sum(const CoeffVector& c, std::size_t n) {
  if (n < 1 || n > c.size()) {
    throw OrderOutOfRange("partial sum order " + std::to_string(n) + " outside [1, " +
                          std::to_string(c.size()) + "]");
  }
  CoeffVector truncated(c.resolution());
  for (std::size_t k = 0; k < n; ++k) truncated[k] = c[k];
  return synthesize(truncated);
}

}  // namespace wclab
