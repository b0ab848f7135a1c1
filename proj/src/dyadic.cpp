#include "wclab/dyadic.hpp"

#include <stdexcept>
#include <string>

#include "wclab/errors.hpp"

namespace wclab {

namespace {

constexpr std::size_t kPairwiseBlock = 32;

}  // namespace

Resolution::Resolution(int bits) : bits_(bits) {
  if (bits < 1 || bits > kMaxBits) {
    throw std::invalid_argument("resolution must be in [1, " + std::to_string(kMaxBits) +
                                "], got " + std::to_string(bits));
  }
}

StepFunction::StepFunction(Resolution res) : res_(res), values_(res.cells(), 0.0) {}

StepFunction::StepFunction(Resolution res, std::vector<double> values)
    : res_(res), values_(std::move(values)) {
  if (values_.size() != res_.cells()) {
    throw std::invalid_argument("step function needs " + std::to_string(res_.cells()) +
                                " values, got " + std::to_string(values_.size()));
  }
}

void validate_subcube(Subcube c, Resolution res) {
  if (c.level < 0 || c.level > res.bits()) {
    throw InvalidSubcube("subcube level " + std::to_string(c.level) + " outside [0, " +
                         std::to_string(res.bits()) + "]");
  }
  if ((c.base & ~c.mask()) != 0) {
    throw InvalidSubcube("subcube base " + std::to_string(c.base) + " has bits at or above level " +
                         std::to_string(c.level));
  }
}

std::vector<PointIndex> interval_indices(Subcube c, Resolution res) {
  validate_subcube(c, res);
  const std::size_t count = std::size_t{1} << (res.bits() - c.level);
  std::vector<PointIndex> out;
  out.reserve(count);
  for (std::size_t m = 0; m < count; ++m) {
    out.push_back(c.base | static_cast<PointIndex>(m << c.level));
  }
  return out;
}

std::vector<LabeledSubcube> partition_complement(int level, Resolution res) {
  if (level < 1 || level > res.bits()) {
    throw InvalidSubcube("partition level " + std::to_string(level) + " outside [1, " +
                         std::to_string(res.bits()) + "]");
  }
  std::vector<LabeledSubcube> out;
  for (int k = 0; k < level; ++k) {
    for (int l = k + 1; l <= level; ++l) {
      if (l == level) {
        out.push_back({Subcube{level, unit_point(k)}, k, l});
        continue;
      }
      const PointIndex fixed = unit_point(k) | unit_point(l);
      const PointIndex free_count = PointIndex{1} << (level - 1 - l);
      for (PointIndex free = 0; free < free_count; ++free) {
        out.push_back({Subcube{level, fixed | (free << (l + 1))}, k, l});
      }
    }
  }
  return out;
}

double pairwise_sum(std::span<const double> xs) {
  // Full binary tree over aligned halves. For power-of-two lengths every node
  // sums an aligned dyadic block, so XOR-permuting the input only swaps
  // operands of commutative additions and the result is bit-identical.
  switch (xs.size()) {
    case 0:
      return 0.0;
    case 1:
      return xs[0];
    case 2:
      return xs[0] + xs[1];
    case 4:
      return (xs[0] + xs[1]) + (xs[2] + xs[3]);
    default:
      break;
  }
  if (xs.size() < kPairwiseBlock && (xs.size() & (xs.size() - 1)) != 0) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double integrate(const StepFunction& f) {
  return pairwise_sum(f.values()) * f.resolution().cell_measure();
}

double integrate(const StepFunction& f, Subcube c) {
  validate_subcube(c, f.resolution());
  const std::size_t count = std::size_t{1} << (f.resolution().bits() - c.level);
  std::vector<double> picked(count);
  for (std::size_t m = 0; m < count; ++m) {
    picked[m] = f[c.base | static_cast<PointIndex>(m << c.level)];
  }
  return pairwise_sum(picked) * f.resolution().cell_measure();
}

StepFunction translate(const StepFunction& f, PointIndex t) {
  const Resolution res = f.resolution();
  if (t >= res.cells()) throw std::invalid_argument("translation outside the resolution");
  StepFunction g(res);
  for (PointIndex x = 0; x < res.cells(); ++x) g[x] = f[group_add(x, t)];
  return g;
}

}  // namespace wclab
