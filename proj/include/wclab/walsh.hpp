#pragma once

// Walsh-Paley system in natural (Paley) order. With the LSB-first coordinate
// convention w_n(x) = (-1)^popcount(n & x), so the natural-order
// Walsh-Hadamard butterfly produces Paley-ordered coefficients directly.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wclab/dyadic.hpp"

namespace wclab {

// Entry n is the Walsh-Fourier coefficient \hat f(n).
class CoeffVector {
 public:
  explicit CoeffVector(Resolution res);
  CoeffVector(Resolution res, std::vector<double> coeffs);

  Resolution resolution() const noexcept { return res_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::span<double> coeffs() noexcept { return coeffs_; }

  double operator[](std::size_t n) const { return coeffs_[n]; }
  double& operator[](std::size_t n) { return coeffs_[n]; }

 private:
  Resolution res_;
  std::vector<double> coeffs_;
};

inline int rademacher(int k, PointIndex x) noexcept { return ((x >> k) & 1U) ? -1 : 1; }

inline int walsh_eval(std::uint64_t n, PointIndex x) noexcept {
  return (std::popcount(n & x) & 1) ? -1 : 1;
}

// In-place unnormalized transform; data.size() must be a power of two.
void fwht_inplace(std::span<double> data);

// coeffs[n] = 2^{-N} sum_i f(i) w_n(i).
CoeffVector analyze(const StepFunction& f);

// f(i) = sum_n coeffs[n] w_n(i); exact inverse of analyze.
StepFunction synthesize(const CoeffVector& c);

StepFunction sample_walsh(std::size_t n, Resolution res);

// D_n = w_0 + ... + w_{n-1}, 1 <= n <= 2^N.
StepFunction dirichlet_kernel(std::size_t n, Resolution res);

// S_n f from coefficients, 1 <= n <= 2^N.
StepFunction partial_sum(const CoeffVector& c, std::size_t n);

}  // namespace wclab
