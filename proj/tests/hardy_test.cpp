#include <gtest/gtest.h>

#include <cmath>

#include "wclab/errors.hpp"
#include "wclab/hardy.hpp"
#include "wclab/random.hpp"
#include "wclab/walsh.hpp"

using namespace wclab;

TEST(LpNorm, IndicatorOfSubcube) {
  const Resolution r(8);
  StepFunction f(r);
  for (PointIndex x : interval_indices({3, 0}, r)) f[x] = 2.0;
  // ||2 * 1_{I_3}||_p = 2 * 2^{-3/p}
  for (double p : {0.5, 1.0, 2.0}) EXPECT_NEAR(lp_norm(f, p), 2.0 * std::exp2(-3.0 / p), 1e-14);
  EXPECT_THROW(lp_norm(f, 0.0), std::invalid_argument);
}

TEST(WeakLpNorm, TwoLevelFunction) {
  const Resolution r(4);
  StepFunction f(r);
  // |f| = 4 on a quarter, 1 on another quarter, 0 elsewhere.
  for (PointIndex x = 0; x < 4; ++x) f[x] = -4.0;
  for (PointIndex x = 4; x < 8; ++x) f[x] = 1.0;
  const double p = 0.5;
  const double expected = std::max(4.0 * std::pow(0.25, 1 / p), 1.0 * std::pow(0.5, 1 / p));
  EXPECT_DOUBLE_EQ(weak_lp_norm(f, p), expected);
}

TEST(WeakLpNorm, NeverExceedsStrongNorm) {
  const Resolution r(9);
  Rng rng(3, 3, 3);
  StepFunction f(r);
  for (double& v : f.values()) v = rng.uniform(-2, 2);
  for (double p : {0.5, 0.8, 1.5}) EXPECT_LE(weak_lp_norm(f, p), lp_norm(f, p) * (1 + 1e-14));
}

TEST(Maximal, MatchesBruteForceAverages) {
  const Resolution r(6);
  Rng rng(5, 5, 5);
  StepFunction f(r);
  for (double& v : f.values()) v = rng.uniform(-1, 1);
  const auto m = maximal_function(f);
  for (PointIndex x = 0; x < r.cells(); ++x) {
    double best = 0;
    for (int n = 0; n <= r.bits(); ++n) {
      double s = 0;
      const auto cube = interval_indices({n, x & ((1u << n) - 1)}, r);
      for (PointIndex y : cube) s += f[y];
      best = std::max(best, std::abs(s / cube.size()));
    }
    EXPECT_NEAR(m[x], best, 1e-13);
  }
}

TEST(Maximal, EqualsSupOfDyadicPartialSums) {
  const Resolution r(5);
  Rng rng(6, 6, 6);
  StepFunction f(r);
  for (double& v : f.values()) v = rng.uniform(-1, 1);
  const auto c = analyze(f);
  const auto m = maximal_function(f);
  for (PointIndex x = 0; x < r.cells(); ++x) {
    double best = 0;
    for (int n = 0; n <= r.bits(); ++n) best = std::max(best, std::abs(partial_sum(c, std::size_t{1} << n)[x]));
    EXPECT_NEAR(m[x], best, 1e-13);
  }
}

TEST(Counterexample, CoefficientsAreOneOnTheBlock) {
  const Resolution r(9);
  for (int k = 0; k <= 4; ++k) {
    const auto c = analyze(counterexample_function(k, r));
    for (std::size_t n = 0; n < r.cells(); ++n) {
      const bool in_block = n >= (std::size_t{1} << (2 * k)) && n < (std::size_t{1} << (2 * k + 1));
      EXPECT_NEAR(c[n], in_block ? 1.0 : 0.0, 1e-14);
    }
  }
  EXPECT_THROW(counterexample_function(5, r), ResolutionTooCoarse);
}

TEST(Counterexample, HardyNormClosedForm) {
  const Resolution r(13);
  for (int k = 0; k <= 6; ++k) {
    const auto f = counterexample_function(k, r);
    for (double p : {0.5, 0.6, 0.9}) {
      const double expected = std::exp2(2.0 * k * (1.0 - 1.0 / p));
      EXPECT_NEAR(hardy_norm(f, p), expected, 1e-10 * expected);
    }
  }
}

TEST(Atom, SatisfiesAtomConditions) {
  const Resolution r(10);
  for (int level : {0, 2, 5, 9}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const Atom a = make_atom(level, 0.6, seed, r);
      const AtomCheck check = validate_atom(a);
      EXPECT_TRUE(check.valid) << level << "/" << seed;
      EXPECT_EQ(check.sup_norm, std::exp2(level / 0.6));
      EXPECT_EQ(check.cells_outside_support, 0u);
    }
  }
}

TEST(Atom, DeterministicPerSeed) {
  const Resolution r(8);
  const Atom a = make_atom(3, 0.6, 7, r);
  const Atom b = make_atom(3, 0.6, 7, r);
  const Atom c = make_atom(3, 0.6, 8, r);
  EXPECT_TRUE(std::equal(a.f.values().begin(), a.f.values().end(), b.f.values().begin()));
  EXPECT_FALSE(std::equal(a.f.values().begin(), a.f.values().end(), c.f.values().begin()));
}

TEST(Atom, PartialSumsVanishBelowSupportScale) {
  const Resolution r(9);
  const Atom a = make_atom(4, 0.6, 1, r);
  const auto c = analyze(a.f);
  for (std::size_t n = 0; n < 16; ++n) EXPECT_NEAR(c[n], 0.0, 1e-12);
}

TEST(Atom, DetectsViolations) {
  const Resolution r(6);
  Atom a = make_atom(2, 0.5, 0, r);
  a.f[1] = 0.5;  // outside I_2(0)
  const AtomCheck check = validate_atom(a);
  EXPECT_FALSE(check.valid);
  EXPECT_EQ(check.cells_outside_support, 1u);
  EXPECT_THROW(make_atom(6, 0.5, 0, r), std::invalid_argument);
}
