#pragma once

// (C, alpha) summability of Walsh-Fourier series:
//   sigma_n f = (1 / A_n) sum_{k=1}^{n} A_{n-k}^{alpha-1} S_k f,
//   K_n      = (1 / A_n) sum_{k=1}^{n} A_{n-k}^{alpha-1} D_k.
// The sum starts at k = 1, so the kernels integrate to A_{n-1}/A_n, not 1.

#include <cstddef>
#include <span>
#include <vector>

#include "wclab/dyadic.hpp"
#include "wclab/walsh.hpp"

namespace wclab {

// A_k^alpha for k = 0..n_max via A_k = A_{k-1} (alpha + k) / k.
class CesaroCoeffTable {
 public:
  // Throws UndefinedCoefficient for alpha <= -1 or alpha > 1. Construction
  // also checks sum_{k<=n} A_k^{alpha-1} == A_n^alpha to 1e-10 relative and
  // throws NumericError if that fails.
  CesaroCoeffTable(double alpha, std::size_t n_max);

  double alpha() const noexcept { return alpha_; }
  std::size_t n_max() const noexcept { return values_.size() - 1; }
  double operator[](std::size_t k) const { return values_[k]; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  double alpha_;
  std::vector<double> values_;
};

CesaroCoeffTable cesaro_coeffs(double alpha, std::size_t n_max);

enum class MeanMode {
  direct,      // the defining weighted sum of partial sums
  multiplier,  // one synthesis of the coefficients times A_{n-1-j}/A_n
};

// (C, alpha) operator for one alpha in (0, 1] and orders up to n_max. Holds
// the A^alpha table (multiplier route) and the A^{alpha-1} table (direct
// route); immutable and shareable across threads.
class CesaroOperator {
 public:
  CesaroOperator(double alpha, std::size_t n_max);

  double alpha() const noexcept { return order_.alpha(); }
  std::size_t n_max() const noexcept { return order_.n_max(); }
  const CesaroCoeffTable& order_table() const noexcept { return order_; }
  const CesaroCoeffTable& predecessor_table() const noexcept { return predecessor_; }

  // A_{n-1-j}^alpha / A_n^alpha for j < n, zero otherwise.
  double multiplier(std::size_t n, std::size_t j) const;

  CoeffVector kernel_coeffs(std::size_t n, Resolution res) const;
  StepFunction kernel(std::size_t n, Resolution res) const;

  // Coefficients of sigma_n f.
  CoeffVector mean_coeffs(const CoeffVector& c, std::size_t n) const;
  StepFunction mean(const CoeffVector& c, std::size_t n, MeanMode mode) const;

  // sigma_1 f, ..., sigma_{n_last} f by the direct route, sharing the partial
  // sums. Element n-1 holds sigma_n f.
  std::vector<StepFunction> direct_means(const CoeffVector& c, std::size_t n_last) const;

  // Calls visit(n, sigma_n f) for n = 1..n_last using the multiplier route.
  template <class Visitor>
  void for_each_mean(const CoeffVector& c, std::size_t n_last, Visitor&& visit) const {
    check_order(n_last, c.size());
    std::vector<double> work(c.size());
    for (std::size_t n = 1; n <= n_last; ++n) {
      fill_mean_coeffs(c, n, work);
      fwht_inplace(work);
      visit(n, std::span<const double>(work));
    }
  }

 private:
  void check_order(std::size_t n, std::size_t cells) const;
  void fill_mean_coeffs(const CoeffVector& c, std::size_t n, std::span<double> out) const;
  StepFunction direct_mean(const CoeffVector& c, std::size_t n) const;

  CesaroCoeffTable order_;
  CesaroCoeffTable predecessor_;
};

StepFunction cesaro_kernel(double alpha, std::size_t n, Resolution res);
StepFunction cesaro_mean(const CoeffVector& c, double alpha, std::size_t n, MeanMode mode);

struct MaximalSpec {
  double alpha = 1.0;
  std::size_t n_max = 1;
  // q in sup_n |sigma_n F| / (n+1)^q; zero gives the plain maximal operator.
  double weight_exponent = 0.0;
};

// q = 1/p - 1 - alpha.
inline double weight_exponent_for(double p, double alpha) { return 1.0 / p - 1.0 - alpha; }

// Pointwise max over n = 1..n_max of |sigma_n f| / (n+1)^q.
StepFunction restricted_maximal(const CoeffVector& c, const MaximalSpec& spec);
StepFunction restricted_maximal(const CoeffVector& c, const CesaroOperator& op,
                                std::size_t n_max, double weight_exponent);

// Multiplies the martingale difference blocks by Rademacher signs of t:
// block 0 = {0} by r_0(t), block n = [2^{n-1}, 2^n) by r_n(t).
CoeffVector conjugate_transform(const CoeffVector& c, PointIndex t);

}  // namespace wclab
