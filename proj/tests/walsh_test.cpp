#include <gtest/gtest.h>

#include <cmath>

#include "wclab/errors.hpp"
#include "wclab/random.hpp"
#include "wclab/walsh.hpp"

using namespace wclab;

namespace {
StepFunction random_function(Resolution r, std::uint64_t seed) {
  Rng rng(7, 0, seed);
  StepFunction f(r);
  for (double& v : f.values()) v = rng.uniform(-1, 1);
  return f;
}
}  // namespace

TEST(Walsh, RademacherProducts) {
  // w_n is the product of r_k over the set bits k of n.
  for (std::uint64_t n = 0; n < 64; ++n) {
    for (PointIndex x = 0; x < 64; ++x) {
      int prod = 1;
      for (int k = 0; k < 6; ++k) {
        if ((n >> k) & 1U) prod *= rademacher(k, x);
      }
      EXPECT_EQ(walsh_eval(n, x), prod);
    }
  }
}

TEST(Walsh, FwhtRejectsNonPowerOfTwo) {
  std::vector<double> v(6);
  EXPECT_THROW(fwht_inplace(v), std::invalid_argument);
}

TEST(Walsh, AnalyzeMatchesNaiveSum) {
  const Resolution r(7);
  const auto f = random_function(r, 1);
  const auto c = analyze(f);
  for (std::size_t n = 0; n < r.cells(); ++n) {
    double s = 0;
    for (PointIndex x = 0; x < r.cells(); ++x) s += f[x] * walsh_eval(n, x);
    EXPECT_NEAR(c[n], s / r.cells(), 1e-14);
  }
}

TEST(Walsh, RoundTrip) {
  const Resolution r(12);
  const auto f = random_function(r, 2);
  const auto g = synthesize(analyze(f));
  for (PointIndex x = 0; x < r.cells(); ++x) EXPECT_NEAR(g[x], f[x], 1e-12);
}

TEST(Walsh, OrthonormalAtSmallResolution) {
  const Resolution r(6);
  for (std::size_t m = 0; m < r.cells(); ++m) {
    const auto c = analyze(sample_walsh(m, r));
    for (std::size_t n = 0; n < r.cells(); ++n) EXPECT_EQ(c[n], n == m ? 1.0 : 0.0);
  }
}

TEST(Dirichlet, PowerOfTwoClosedForm) {
  for (int bits = 1; bits <= 8; ++bits) {
    const Resolution r(bits);
    for (int m = 0; m <= bits; ++m) {
      const auto d = dirichlet_kernel(std::size_t{1} << m, r);
      for (PointIndex x = 0; x < r.cells(); ++x) {
        EXPECT_EQ(d[x], (x & ((1u << m) - 1)) == 0 ? std::ldexp(1.0, m) : 0.0);
      }
    }
  }
}

TEST(Dirichlet, GeneralOrderIsSumOfWalsh) {
  const Resolution r(5);
  for (std::size_t n : {1u, 3u, 5u, 13u, 32u}) {
    const auto d = dirichlet_kernel(n, r);
    for (PointIndex x = 0; x < r.cells(); ++x) {
      int s = 0;
      for (std::size_t j = 0; j < n; ++j) s += walsh_eval(j, x);
      EXPECT_EQ(d[x], s);
    }
  }
}

TEST(Dirichlet, OrderBounds) {
  const Resolution r(4);
  EXPECT_THROW(dirichlet_kernel(0, r), OrderOutOfRange);
  EXPECT_THROW(dirichlet_kernel(17, r), ResolutionTooCoarse);
}

TEST(PartialSum, EqualsConvolutionWithDirichlet) {
  const Resolution r(6);
  const auto f = random_function(r, 3);
  const auto c = analyze(f);
  for (std::size_t n : {1u, 7u, 20u, 64u}) {
    const auto s = partial_sum(c, n);
    const auto d = dirichlet_kernel(n, r);
    for (PointIndex x = 0; x < r.cells(); ++x) {
      double conv = 0;
      for (PointIndex t = 0; t < r.cells(); ++t) conv += f[t] * d[x ^ t];
      EXPECT_NEAR(s[x], conv / r.cells(), 1e-12);
    }
  }
}
