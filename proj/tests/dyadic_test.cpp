#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <numeric>

#include "wclab/dyadic.hpp"
#include "wclab/errors.hpp"
#include "wclab/random.hpp"

using namespace wclab;

TEST(Resolution, RejectsOutOfRange) {
  EXPECT_THROW(Resolution(0), std::invalid_argument);
  EXPECT_THROW(Resolution(Resolution::kMaxBits + 1), std::invalid_argument);
  const Resolution r(5);
  EXPECT_EQ(r.cells(), 32u);
  EXPECT_DOUBLE_EQ(r.cell_measure(), 1.0 / 32);
}

TEST(Subcube, ContainsAgreesWithLowBits) {
  const Subcube c{3, 0b101};
  EXPECT_TRUE(c.contains(0b101));
  EXPECT_TRUE(c.contains(0b1101));
  EXPECT_FALSE(c.contains(0b100));
  EXPECT_DOUBLE_EQ(c.measure(), 0.125);
}

TEST(Subcube, ValidateRejectsBadDescriptions) {
  const Resolution r(4);
  EXPECT_THROW(validate_subcube({5, 0}, r), InvalidSubcube);
  EXPECT_THROW(validate_subcube({-1, 0}, r), InvalidSubcube);
  EXPECT_THROW(validate_subcube({2, 4}, r), InvalidSubcube);
  EXPECT_NO_THROW(validate_subcube({2, 3}, r));
}

TEST(Subcube, IntervalIndicesEnumerateTheCube) {
  const Resolution r(5);
  const auto idx = interval_indices({2, 1}, r);
  ASSERT_EQ(idx.size(), 8u);
  for (PointIndex x : idx) EXPECT_EQ(x & 3u, 1u);
  EXPECT_TRUE(std::is_sorted(idx.begin(), idx.end()));
}

TEST(Partition, LevelTwoBases) {
  const auto parts = partition_complement(2, Resolution(4));
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].cube.base, 3u);  // I_2^{0,1}
  EXPECT_EQ(parts[0].k, 0);
  EXPECT_EQ(parts[0].l, 1);
  EXPECT_EQ(parts[1].cube.base, 1u);  // I_2^{0,2}
  EXPECT_EQ(parts[1].l, 2);
  EXPECT_EQ(parts[2].cube.base, 2u);  // I_2^{1,2}
  EXPECT_EQ(parts[2].k, 1);
}

TEST(Partition, CoversComplementExactlyOnce) {
  const Resolution r(9);
  for (int m = 1; m <= r.bits(); ++m) {
    std::vector<int> cover(r.cells(), 0);
    const auto parts = partition_complement(m, r);
    EXPECT_EQ(parts.size(), (std::size_t{1} << m) - 1);
    for (const auto& p : parts) {
      EXPECT_EQ(p.cube.level, m);
      for (PointIndex x : interval_indices(p.cube, r)) ++cover[x];
    }
    for (PointIndex x = 0; x < r.cells(); ++x) EXPECT_EQ(cover[x], (x & ((1u << m) - 1)) == 0 ? 0 : 1);
  }
}

TEST(Partition, LabelsMatchCoordinates) {
  // k is the lowest set coordinate and l the second (or M if none below M).
  const int m = 6;
  for (const auto& p : partition_complement(m, Resolution(8))) {
    const PointIndex b = p.cube.base;
    EXPECT_EQ(std::countr_zero(b), p.k);
    const PointIndex rest = b & ~(PointIndex{1} << p.k);
    if (p.l < m) {
      EXPECT_EQ(std::countr_zero(rest), p.l);
    } else {
      EXPECT_EQ(rest, 0u);
    }
  }
}

TEST(Integrate, ConstantAndSubcube) {
  const Resolution r(6);
  StepFunction f(r, std::vector<double>(r.cells(), 3.0));
  EXPECT_DOUBLE_EQ(integrate(f), 3.0);
  EXPECT_DOUBLE_EQ(integrate(f, {2, 1}), 0.75);
}

TEST(Translate, ShiftsByXor) {
  const Resolution r(5);
  StepFunction f(r);
  for (PointIndex x = 0; x < r.cells(); ++x) f[x] = x;
  const auto g = translate(f, 0b10110);
  for (PointIndex x = 0; x < r.cells(); ++x) EXPECT_EQ(g[x], static_cast<double>(x ^ 0b10110));
}

TEST(Translate, IntegralIsInvariantBitForBit) {
  const Resolution r(10);
  Rng rng(0, 1, 2);
  StepFunction f(r);
  for (double& v : f.values()) v = rng.uniform(-1, 1);
  const double base = integrate(f);
  for (PointIndex t : {1u, 37u, 512u, 1023u}) EXPECT_EQ(integrate(translate(f, t)), base);
}

TEST(PairwiseSum, MatchesSequentialOnSmallInputs) {
  std::vector<double> xs(37);
  std::iota(xs.begin(), xs.end(), 1.0);
  EXPECT_EQ(pairwise_sum(xs), 37.0 * 38.0 / 2.0);
  EXPECT_EQ(pairwise_sum({}), 0.0);
}

TEST(Group, AddIsInvolution) {
  EXPECT_EQ(group_add(group_add(13, 7), 7), 13u);
  EXPECT_EQ(unit_point(3), 8u);
}
