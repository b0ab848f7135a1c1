#pragma once

// Lebesgue and weak-Lebesgue quasi-norms, the dyadic maximal function, the
// martingale Hardy quasi-norm, p-atoms and the divergence counterexample.

#include <cstdint>
#include <string>
#include <vector>

#include "wclab/dyadic.hpp"

namespace wclab {

double lp_norm(const StepFunction& f, double p);

// sup over lambda > 0 of lambda * mu(|f| > lambda)^{1/p}, realized as
// max_j v_j * mu(|f| >= v_j)^{1/p} over the finitely many values of |f|.
double weak_lp_norm(const StepFunction& f, double p);

// f*(x) = max_{n=0..N} |S_{2^n} f(x)|, computed from dyadic local averages.
StepFunction maximal_function(const StepFunction& f);

// || f* ||_p for the regular martingale generated by f.
double hardy_norm(const StepFunction& f, double p);

struct Atom {
  int level = 0;  // support I_level(0), measure 2^{-level}
  double p = 1.0;
  StepFunction f;
};

// Deterministic p-atom on I_M(0): uniform [-1, 1] draws on the cells of the
// support, mean removed, scaled so that sup |f| = 2^{M/p} exactly. A
// degenerate draw is retried with seed + 1, up to 8 times.
Atom make_atom(int level, double p, std::uint64_t seed, Resolution res, std::uint64_t seed_base = 0);

struct AtomCheck {
  bool valid = true;
  double mean_deviation = 0.0;  // |integral over the support|
  double sup_norm = 0.0;
  double sup_bound = 0.0;  // 2^{M/p}
  std::size_t cells_outside_support = 0;
  std::vector<std::string> violations;
};

AtomCheck validate_atom(const Atom& a);

// f_k = D_{2^{2k+1}} - D_{2^{2k}}: Walsh coefficients equal 1 on
// [2^{2k}, 2^{2k+1}) and vanish elsewhere. Requires 2k + 1 <= N.
StepFunction counterexample_function(int k, Resolution res);

}  // namespace wclab
