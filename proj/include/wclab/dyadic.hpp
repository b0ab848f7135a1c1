#pragma once

// Finite-resolution model of the dyadic group: points are N-bit indices whose
// bit j is the coordinate x_j (LSB first), the group law is XOR, and a
// function constant on resolution-N cells is stored as 2^N reals.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace wclab {

using PointIndex = std::uint32_t;

class Resolution {
 public:
  static constexpr int kMaxBits = 24;
  static constexpr int kDefaultBits = 14;

  // Throws std::invalid_argument unless 1 <= bits <= kMaxBits.
  explicit Resolution(int bits);

  int bits() const noexcept { return bits_; }
  std::size_t cells() const noexcept { return std::size_t{1} << bits_; }
  double cell_measure() const noexcept { return std::ldexp(1.0, -bits_); }

  friend bool operator==(Resolution, Resolution) = default;

 private:
  int bits_;
};

// The dyadic interval I_level(base): all points whose low `level` bits equal base.
struct Subcube {
  int level = 0;
  PointIndex base = 0;

  PointIndex mask() const noexcept { return (PointIndex{1} << level) - 1; }
  bool contains(PointIndex x) const noexcept { return (x & mask()) == base; }
  double measure() const noexcept { return std::ldexp(1.0, -level); }

  friend bool operator==(const Subcube&, const Subcube&) = default;
};

// A level-M subcube of the complement partition of I_M, labelled (k, l) with
// l == M for the I_M^{k,M} family.
struct LabeledSubcube {
  Subcube cube;
  int k = 0;
  int l = 0;
};

class StepFunction {
 public:
  explicit StepFunction(Resolution res);
  StepFunction(Resolution res, std::vector<double> values);

  Resolution resolution() const noexcept { return res_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  double operator[](PointIndex i) const { return values_[i]; }
  double& operator[](PointIndex i) { return values_[i]; }

  std::vector<double> release() && { return std::move(values_); }

 private:
  Resolution res_;
  std::vector<double> values_;
};

constexpr PointIndex group_add(PointIndex a, PointIndex b) noexcept { return a ^ b; }

// Index of e_n = (0, ..., 0, x_n = 1, 0, ...).
constexpr PointIndex unit_point(int n) noexcept { return PointIndex{1} << n; }

// Throws InvalidSubcube when c does not describe a subcube at resolution res.
void validate_subcube(Subcube c, Resolution res);

std::vector<PointIndex> interval_indices(Subcube c, Resolution res);

// Decomposition of G \ I_M into level-M subcubes, ordered by k then l. For
// k < l < M the family I_M^{k,l} is expanded over its free coordinates
// x_{l+1}, ..., x_{M-1}.
std::vector<LabeledSubcube> partition_complement(int level, Resolution res);

// Haar integral; exact for step functions up to pairwise-summation round-off.
double integrate(const StepFunction& f);
double integrate(const StepFunction& f, Subcube c);

// g(x) = f(x + t).
StepFunction translate(const StepFunction& f, PointIndex t);

double pairwise_sum(std::span<const double> xs);

}  // namespace wclab
