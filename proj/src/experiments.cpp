#include "wclab/experiments.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <string>

#include "wclab/cesaro.hpp"
#include "wclab/errors.hpp"
#include "wclab/hardy.hpp"
#include "wclab/parallel.hpp"
#include "wclab/random.hpp"
#include "wclab/walsh.hpp"

namespace wclab {

namespace {

constexpr std::uint64_t kLocalizedStream = 0x6c656d3300000000ULL;     // "lem3"
constexpr std::uint64_t kIdentityStream = 0x6964656e00000000ULL;   // "iden"
constexpr std::uint64_t kSelftestStream = 0x6677687400000000ULL;   // "fwht"

std::string key(const std::string& prefix, double value) { return prefix + "=" + format_double(value); }

std::string alpha_p_key(double alpha, double p) { return key("alpha", alpha) + "/" + key("p", p); }

void require_nonempty(bool empty, const char* what) {
  if (empty) throw ValidationError(std::string("grid needs at least one ") + what);
}

void require_summability_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ValidationError("alpha must lie in (0, 1], got " + format_double(alpha));
  }
}

// Parameter domain of the H_p results: 0 < alpha < 1 and 0 < p < 1/(1+alpha).
void require_theorem_domain(const GridSpec& grid) {
  require_nonempty(grid.alphas.empty(), "alpha");
  require_nonempty(grid.ps.empty(), "p");
  for (double alpha : grid.alphas) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw ValidationError("alpha must lie in (0, 1), got " + format_double(alpha));
    }
    for (double p : grid.ps) {
      if (!(p > 0.0 && p < 1.0 / (1.0 + alpha))) {
        throw ValidationError("p = " + format_double(p) + " violates 0 < p < 1/(1+alpha) for alpha = " +
                              format_double(alpha));
      }
    }
  }
}

void require_seeds(const GridSpec& grid) {
  if (grid.seed_last < grid.seed_first) throw ValidationError("seed range is empty");
}

std::size_t order_cap(const GridSpec& grid, Resolution res) {
  const std::size_t cap = grid.n_max == 0 ? res.cells() : grid.n_max;
  if (cap > res.cells()) {
    throw ValidationError("n_max = " + std::to_string(cap) + " exceeds 2^N = " +
                          std::to_string(res.cells()));
  }
  return cap;
}

void require_atom_levels(const GridSpec& grid, Resolution res) {
  require_nonempty(grid.levels.empty(), "atom level M");
  for (int m : grid.levels) {
    if (m < 0 || m >= res.bits()) throw ValidationError("atom level M must satisfy 0 <= M < N");
  }
}

double max_abs(std::span<const double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

double abs_integral(const StepFunction& f, std::vector<double>& scratch) {
  const auto v = f.values();
  scratch.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) scratch[i] = std::abs(v[i]);
  return pairwise_sum(scratch) / static_cast<double>(v.size());
}

// integral over G of |v|^p, with |v|^p summed pairwise.
double power_integral(std::span<const double> values, double p, std::vector<double>& scratch) {
  scratch.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double a = std::abs(values[i]);
    scratch[i] = a == 0.0 ? 0.0 : std::pow(a, p);
  }
  return pairwise_sum(scratch) / static_cast<double>(values.size());
}

// Pointwise square function (sum_n |F_n - F_{n-1}|^2)^{1/2}, F_{-1} = 0.
StepFunction square_function(const StepFunction& f) {
  const Resolution res = f.resolution();
  const int bits = res.bits();
  std::vector<std::vector<double>> levels(static_cast<std::size_t>(bits) + 1);
  levels[static_cast<std::size_t>(bits)].assign(f.values().begin(), f.values().end());
  for (int n = bits - 1; n >= 0; --n) {
    const auto& finer = levels[static_cast<std::size_t>(n) + 1];
    const std::size_t half = std::size_t{1} << n;
    auto& coarse = levels[static_cast<std::size_t>(n)];
    coarse.resize(half);
    for (std::size_t r = 0; r < half; ++r) coarse[r] = 0.5 * (finer[r] + finer[r + half]);
  }
  StepFunction out(res);
  for (std::size_t x = 0; x < res.cells(); ++x) {
    double previous = 0.0;
    double sum = 0.0;
    for (int n = 0; n <= bits; ++n) {
      const double current = levels[static_cast<std::size_t>(n)][x & ((std::size_t{1} << n) - 1)];
      sum += (current - previous) * (current - previous);
      previous = current;
    }
    out[static_cast<PointIndex>(x)] = std::sqrt(sum);
  }
  return out;
}

StepFunction random_function(Resolution res, Rng& rng) {
  StepFunction f(res);
  for (double& v : f.values()) v = rng.uniform(-1.0, 1.0);
  return f;
}

struct AtomKey {
  double alpha;
  double p;
  int level;
  std::uint64_t seed;
};

std::vector<AtomKey> atom_grid(const GridSpec& grid) {
  std::vector<AtomKey> keys;
  for (double alpha : grid.alphas) {
    for (double p : grid.ps) {
      for (int m : grid.levels) {
        for (std::uint64_t s = grid.seed_first; s <= grid.seed_last; ++s) keys.push_back({alpha, p, m, s});
      }
    }
  }
  return keys;
}

std::vector<CesaroOperator> operators_for(const std::vector<double>& alphas, std::size_t n_max) {
  std::vector<CesaroOperator> ops;
  ops.reserve(alphas.size());
  for (double alpha : alphas) ops.emplace_back(alpha, n_max);
  return ops;
}

const CesaroOperator& operator_for(const std::vector<CesaroOperator>& ops, double alpha) {
  for (const auto& op : ops) {
    if (op.alpha() == alpha) return op;
  }
  throw std::logic_error("no Cesaro operator for alpha " + format_double(alpha));
}

}  // namespace

IntRange parse_range(std::string_view text) {
  auto parse_one = [&](std::string_view part) {
    long long v = 0;
    const auto* begin = part.data();
    const auto* end = part.data() + part.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || part.empty()) {
      throw ValidationError("malformed range '" + std::string(text) + "'");
    }
    return v;
  };
  IntRange r;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    r.first = parse_one(text.substr(0, dots));
    r.last = parse_one(text.substr(dots + 2));
  } else {
    r.first = r.last = parse_one(text);
  }
  if (r.last < r.first) throw ValidationError("range '" + std::string(text) + "' is empty");
  return r;
}

std::string format_range(IntRange r) { return std::to_string(r.first) + ".." + std::to_string(r.last); }

nlohmann::json to_json(const GridSpec& grid) {
  return {{"alpha", grid.alphas},
          {"p", grid.ps},
          {"M", grid.levels},
          {"nmax", grid.n_max},
          {"k", format_range({grid.k_first, grid.k_last})},
          {"seeds", format_range({static_cast<long long>(grid.seed_first),
                                  static_cast<long long>(grid.seed_last)})},
          {"N", grid.resolution_bits},
          {"seed_base", grid.seed_base}};
}

GridSpec grid_from_json(const nlohmann::json& j, GridSpec grid) {
  if (!j.is_object()) throw ValidationError("grid must be a JSON object");
  try {
    if (j.contains("alpha")) grid.alphas = j.at("alpha").get<std::vector<double>>();
    if (j.contains("p")) grid.ps = j.at("p").get<std::vector<double>>();
    if (j.contains("M")) grid.levels = j.at("M").get<std::vector<int>>();
    if (j.contains("nmax")) grid.n_max = j.at("nmax").get<std::size_t>();
    if (j.contains("N")) grid.resolution_bits = j.at("N").get<int>();
    if (j.contains("seed_base")) grid.seed_base = j.at("seed_base").get<std::uint64_t>();
    if (j.contains("k")) {
      const IntRange r = parse_range(j.at("k").get<std::string>());
      grid.k_first = static_cast<int>(r.first);
      grid.k_last = static_cast<int>(r.last);
    }
    if (j.contains("seeds")) {
      const IntRange r = parse_range(j.at("seeds").get<std::string>());
      if (r.first < 0) throw ValidationError("seeds must be non-negative");
      grid.seed_first = static_cast<std::uint64_t>(r.first);
      grid.seed_last = static_cast<std::uint64_t>(r.last);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad grid field: ") + e.what());
  }
  return grid;
}

double fitted_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw ValidationError("slope fit needs at least two points");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

// ---------------------------------------------------------------------------

ExperimentReport check_kernel_l1(const GridSpec& grid, unsigned jobs) {
  const Resolution res = grid.resolution();
  require_nonempty(grid.alphas.empty(), "alpha");
  for (double alpha : grid.alphas) require_summability_alpha(alpha);
  const std::size_t n_max = order_cap(grid, res);

  ExperimentReport report("kernel-l1", {"alpha", "n", "l1"});
  report.set_parameters(to_json(grid));

  // Blocks [2^j, 2^{j+1}) that lie entirely inside 1..n_max.
  const int complete_blocks = std::bit_width(n_max + 1) - 1;
  const int window = std::min(4, complete_blocks / 2);

  for (double alpha : grid.alphas) {
    const CesaroOperator op(alpha, n_max);
    const auto l1 = parallel_map(n_max, jobs, [&](std::size_t i) {
      std::vector<double> scratch;
      return abs_integral(op.kernel(i + 1, res), scratch);
    });

    std::vector<double> block_max(static_cast<std::size_t>(std::bit_width(n_max)), 0.0);
    for (std::size_t n = 1; n <= n_max; ++n) {
      report.add_row({alpha, static_cast<double>(n), l1[n - 1]});
      auto& slot = block_max[static_cast<std::size_t>(std::bit_width(n) - 1)];
      slot = std::max(slot, l1[n - 1]);
    }
    const std::string prefix = key("alpha", alpha);
    for (std::size_t j = 0; j < block_max.size(); ++j) {
      report.set_summary(prefix + "/block_max/j=" + std::to_string(j), block_max[j]);
    }
    const double global = *std::max_element(l1.begin(), l1.end());
    report.set_summary(prefix + "/max_l1", global);

    if (window >= 1) {
      double upper = 0.0;
      double lower = 0.0;
      for (int j = complete_blocks - window; j < complete_blocks; ++j) {
        upper = std::max(upper, block_max[static_cast<std::size_t>(j)]);
      }
      for (int j = complete_blocks - 2 * window; j < complete_blocks - window; ++j) {
        lower = std::max(lower, block_max[static_cast<std::size_t>(j)]);
      }
      const double growth = upper / lower - 1.0;
      report.set_summary(prefix + "/upper_window_max", upper);
      report.set_summary(prefix + "/lower_window_max", lower);
      report.set_summary(prefix + "/window_growth", growth);
      report.add_check(prefix + ": upper/lower dyadic window max of ||K_n||_1 - 1", growth,
                       Relation::less, thresholds::kKernelBlockGrowth);
    }
    if (alpha == 1.0) {
      report.add_check(prefix + ": max ||K_n||_1", global, Relation::less_equal, 2.0);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

struct LocalizedLabel {
  int k = 0;
  int l = 0;
  double max_ratio = 0.0;
  std::size_t argmax_n = 0;
};

struct LocalizedResult {
  std::vector<LocalizedLabel> labels;
  double max_pair = 0.0;    // k < l < M
  double max_single = 0.0;  // l = M
  double invariance = 0.0;
};

LocalizedResult localized_level(const CesaroOperator& op, int level, std::size_t n_lo, std::size_t n_hi,
                          Resolution res, std::uint64_t seed_base) {
  constexpr int kTranslates = 3;
  const auto cubes = partition_complement(level, res);
  const auto support = interval_indices(Subcube{level, 0}, res);
  const std::uint64_t free_count = std::uint64_t{1} << (res.bits() - level);

  std::vector<std::vector<PointIndex>> points(cubes.size());
  for (std::size_t s = 0; s < cubes.size(); ++s) {
    Rng rng(seed_base, kLocalizedStream | static_cast<std::uint64_t>(level), s);
    points[s].push_back(cubes[s].cube.base);
    for (int q = 0; q < kTranslates; ++q) {
      points[s].push_back(cubes[s].cube.base | static_cast<PointIndex>(rng.below(free_count) << level));
    }
  }

  LocalizedResult result;
  std::vector<std::size_t> label_of(cubes.size());
  for (std::size_t s = 0; s < cubes.size(); ++s) {
    if (result.labels.empty() || result.labels.back().k != cubes[s].k ||
        result.labels.back().l != cubes[s].l) {
      result.labels.push_back({cubes[s].k, cubes[s].l, 0.0, 0});
    }
    label_of[s] = result.labels.size() - 1;
  }

  const double alpha = op.alpha();
  const double cell = res.cell_measure();
  std::vector<double> gathered(support.size());
  std::vector<double> magnitude(res.cells());
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    const StepFunction kernel = op.kernel(n, res);
    for (std::size_t x = 0; x < res.cells(); ++x) magnitude[x] = std::abs(kernel.values()[x]);
    const double n_alpha = std::pow(static_cast<double>(n), alpha);
    for (std::size_t s = 0; s < cubes.size(); ++s) {
      const int k = cubes[s].k;
      const int l = cubes[s].l;
      const bool pair_case = l < level;
      const double bound = pair_case ? std::exp2(alpha * l + k - level) / n_alpha : std::exp2(k - level);
      double base_ratio = 0.0;
      for (std::size_t q = 0; q < points[s].size(); ++q) {
        const PointIndex x = points[s][q];
        for (std::size_t i = 0; i < support.size(); ++i) gathered[i] = magnitude[group_add(x, support[i])];
        const double ratio = pairwise_sum(gathered) * cell / bound;
        if (q == 0) {
          base_ratio = ratio;
        } else {
          const double dev = std::abs(ratio - base_ratio);
          result.invariance = std::max(result.invariance, base_ratio > 0.0 ? dev / base_ratio : dev);
        }
        auto& label = result.labels[label_of[s]];
        if (ratio > label.max_ratio) {
          label.max_ratio = ratio;
          label.argmax_n = n;
        }
        (pair_case ? result.max_pair : result.max_single) =
            std::max(pair_case ? result.max_pair : result.max_single, ratio);
      }
    }
  }
  return result;
}

}  // namespace

ExperimentReport check_lemma3(const GridSpec& grid, unsigned jobs) {
  const Resolution res = grid.resolution();
  require_nonempty(grid.alphas.empty(), "alpha");
  require_nonempty(grid.levels.empty(), "level M");
  for (double alpha : grid.alphas) require_summability_alpha(alpha);
  std::vector<int> levels = grid.levels;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  const std::size_t cap = order_cap(grid, res);

  struct Task {
    double alpha;
    int level;
    std::size_t n_lo;
    std::size_t n_hi;
  };
  std::vector<Task> tasks;
  for (double alpha : grid.alphas) {
    for (int m : levels) {
      if (m < 1 || m + 1 > res.bits()) throw ValidationError("lemma3 grid needs 1 <= M and M + 1 <= N");
      const std::size_t lo = (std::size_t{1} << m) + 1;
      const std::size_t hi = std::min((std::size_t{1} << (m + 2)) - 1, cap);
      if (hi < lo) {
        throw ValidationError("lemma3 needs n > 2^M; no admissible n for M = " + std::to_string(m));
      }
      tasks.push_back({alpha, m, lo, hi});
    }
  }
  const auto ops = operators_for(grid.alphas, cap);

  const auto results = parallel_map(tasks.size(), jobs, [&](std::size_t i) {
    const Task& t = tasks[i];
    return localized_level(operator_for(ops, t.alpha), t.level, t.n_lo, t.n_hi, res, grid.seed_base);
  });

  ExperimentReport report("lemma3", {"alpha", "M", "k", "l", "case", "max_ratio", "argmax_n"});
  report.set_parameters(to_json(grid));
  double invariance = 0.0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Task& t = tasks[i];
    const LocalizedResult& r = results[i];
    for (const auto& label : r.labels) {
      report.add_row({t.alpha, static_cast<double>(t.level), static_cast<double>(label.k),
                      static_cast<double>(label.l), label.l < t.level ? 1.0 : 2.0, label.max_ratio,
                      static_cast<double>(label.argmax_n)});
    }
    const std::string prefix = key("alpha", t.alpha) + "/M=" + std::to_string(t.level);
    report.set_summary(prefix + "/max_ratio_pair", r.max_pair);
    report.set_summary(prefix + "/max_ratio_single", r.max_single);
    report.set_summary(prefix + "/max_ratio", std::max(r.max_pair, r.max_single));
    report.set_summary(prefix + "/n_first", static_cast<double>(t.n_lo));
    report.set_summary(prefix + "/n_last", static_cast<double>(t.n_hi));
    invariance = std::max(invariance, r.invariance);
  }

  for (double alpha : grid.alphas) {
    if (levels.size() < 2) break;
    const std::string prefix = key("alpha", alpha);
    double worst = -1.0;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
      const double r0 = report.summary_value(prefix + "/M=" + std::to_string(levels[i]) + "/max_ratio");
      const double r1 = report.summary_value(prefix + "/M=" + std::to_string(levels[i + 1]) + "/max_ratio");
      const double per_level = std::pow(r1 / r0, 1.0 / (levels[i + 1] - levels[i])) - 1.0;
      worst = std::max(worst, per_level);
    }
    report.set_summary(prefix + "/max_growth_per_level", worst);
    report.add_check(prefix + ": growth of max bound ratio per unit M", worst, Relation::less,
                     thresholds::kLocalizedGrowthPerLevel);
  }
  report.set_summary("translation_invariance_max_rel_dev", invariance);
  report.add_check("ratio invariance under translation inside the level-M subcube", invariance,
                   Relation::less_equal, thresholds::kTranslationInvariance);
  return report;
}

// ---------------------------------------------------------------------------

ExperimentReport run_theorem1a(const GridSpec& grid, unsigned jobs) {
  const Resolution res = grid.resolution();
  require_theorem_domain(grid);
  require_atom_levels(grid, res);
  require_seeds(grid);
  const std::size_t n_max = order_cap(grid, res);
  if (n_max < 2) throw ValidationError("theorem1a needs n_max >= 2");
  const std::size_t n_half = n_max / 2;
  const auto keys = atom_grid(grid);
  const auto ops = operators_for(grid.alphas, n_max);

  struct Row {
    double hardy = 0.0;
    double ratio_half = 0.0;
    double ratio_full = 0.0;
    double vanish = 0.0;
  };
  const auto rows = parallel_map(keys.size(), jobs, [&](std::size_t i) {
    const AtomKey& key = keys[i];
    const CesaroOperator& op = operator_for(ops, key.alpha);
    const Atom atom = make_atom(key.level, key.p, key.seed, res, grid.seed_base);
    const CoeffVector c = analyze(atom.f);
    const double q = weight_exponent_for(key.p, key.alpha);
    const std::size_t silent = std::size_t{1} << key.level;

    StepFunction best(res);
    StepFunction best_half(res);
    double vanish = 0.0;
    op.for_each_mean(c, n_max, [&](std::size_t n, std::span<const double> mean) {
      const double scale = std::pow(static_cast<double>(n + 1), -q);
      auto b = best.values();
      for (std::size_t x = 0; x < b.size(); ++x) b[x] = std::max(b[x], std::abs(mean[x]) * scale);
      if (n <= silent) vanish = std::max(vanish, max_abs(mean));
      if (n == n_half) best_half = best;
    });
    Row row;
    row.hardy = hardy_norm(atom.f, key.p);
    row.ratio_half = lp_norm(best_half, key.p) / row.hardy;
    row.ratio_full = lp_norm(best, key.p) / row.hardy;
    row.vanish = vanish / std::exp2(key.level / key.p);
    return row;
  });

  ExperimentReport report("theorem1a", {"alpha", "p", "M", "seed", "hardy_norm", "ratio_half_nmax",
                                        "ratio_nmax", "vanishing_rel"});
  report.set_parameters(to_json(grid));
  double vanish = 0.0;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    report.add_row({keys[i].alpha, keys[i].p, static_cast<double>(keys[i].level),
                    static_cast<double>(keys[i].seed), rows[i].hardy, rows[i].ratio_half,
                    rows[i].ratio_full, rows[i].vanish});
    vanish = std::max(vanish, rows[i].vanish);
  }
  for (double alpha : grid.alphas) {
    for (double p : grid.ps) {
      double full = 0.0;
      double half = 0.0;
      for (std::size_t i = 0; i < keys.size(); ++i) {
        if (keys[i].alpha != alpha || keys[i].p != p) continue;
        full = std::max(full, rows[i].ratio_full);
        half = std::max(half, rows[i].ratio_half);
      }
      const std::string prefix = alpha_p_key(alpha, p);
      const double change = std::abs(full / half - 1.0);
      report.set_summary(prefix + "/max_ratio_nmax", full);
      report.set_summary(prefix + "/max_ratio_half_nmax", half);
      report.set_summary(prefix + "/relative_change", change);
      report.add_check(prefix + ": change of max weighted-maximal ratio from n_max/2 to n_max", change,
                       Relation::less, thresholds::kWeightedMaximalChange);
    }
  }
  report.set_summary("vanishing_below_2M_max_rel", vanish);
  report.add_check("sigma_n a = 0 for n <= 2^M (relative to 2^{M/p})", vanish, Relation::less_equal,
                   thresholds::kAtomVanishing);
  return report;
}

// ---------------------------------------------------------------------------

ExperimentReport run_theorem1b(const GridSpec& grid, unsigned jobs) {
  const Resolution res = grid.resolution();
  require_theorem_domain(grid);
  if (grid.k_first < 0 || grid.k_last < grid.k_first) throw ValidationError("k range is empty");
  if (2 * grid.k_last + 1 > res.bits()) throw ValidationError("theorem1b needs 2 * max(k) + 1 <= N");
  if (grid.k_last == grid.k_first) throw ValidationError("theorem1b needs at least two values of k");

  struct Task {
    double alpha;
    double p;
    int k;
  };
  std::vector<Task> tasks;
  for (double alpha : grid.alphas) {
    for (double p : grid.ps) {
      for (int k = grid.k_first; k <= grid.k_last; ++k) tasks.push_back({alpha, p, k});
    }
  }

  struct Row {
    double n = 0.0;
    double a_n = 0.0;
    double weak = 0.0;
    double hardy = 0.0;
    double hardy_expected = 0.0;
    double ratio = 0.0;
    double collapse_dev = 0.0;
    double mode_dev = 0.0;
  };
  const auto rows = parallel_map(tasks.size(), jobs, [&](std::size_t i) {
    const Task& t = tasks[i];
    const std::size_t n = (std::size_t{1} << (2 * t.k)) + 1;
    const CesaroOperator op(t.alpha, n);
    const StepFunction f = counterexample_function(t.k, res);
    const CoeffVector c = analyze(f);
    const StepFunction mean = op.mean(c, n, MeanMode::multiplier);
    const StepFunction direct = op.mean(c, n, MeanMode::direct);

    Row row;
    row.n = static_cast<double>(n);
    row.a_n = op.order_table()[n];
    const double expected = 1.0 / row.a_n;
    for (std::size_t x = 0; x < res.cells(); ++x) {
      row.collapse_dev = std::max(row.collapse_dev, std::abs(std::abs(mean.values()[x]) - expected) / expected);
      row.mode_dev = std::max(row.mode_dev, std::abs(mean.values()[x] - direct.values()[x]));
    }
    row.mode_dev /= max_abs(mean.values());
    row.weak = weak_lp_norm(mean, t.p);
    row.hardy = hardy_norm(f, t.p);
    row.hardy_expected = std::exp2(2.0 * t.k * (1.0 - 1.0 / t.p));
    row.ratio = row.weak / row.hardy;
    return row;
  });

  ExperimentReport report("theorem1b", {"alpha", "p", "k", "n", "A_n", "weak_norm_mean", "hardy_norm",
                                        "hardy_norm_closed_form", "ratio", "log2_ratio",
                                        "collapse_rel_dev", "mode_rel_dev"});
  report.set_parameters(to_json(grid));
  double collapse = 0.0;
  double modes = 0.0;
  double hardy_dev = 0.0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Row& r = rows[i];
    report.add_row({tasks[i].alpha, tasks[i].p, static_cast<double>(tasks[i].k), r.n, r.a_n, r.weak,
                    r.hardy, r.hardy_expected, r.ratio, std::log2(r.ratio), r.collapse_dev, r.mode_dev});
    collapse = std::max(collapse, r.collapse_dev);
    modes = std::max(modes, r.mode_dev);
    hardy_dev = std::max(hardy_dev, std::abs(r.hardy - r.hardy_expected) / r.hardy_expected);
  }
  for (double alpha : grid.alphas) {
    for (double p : grid.ps) {
      std::vector<double> ks;
      std::vector<double> logs;
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (tasks[i].alpha != alpha || tasks[i].p != p) continue;
        ks.push_back(static_cast<double>(tasks[i].k));
        logs.push_back(std::log2(rows[i].ratio));
      }
      const double slope = fitted_slope(ks, logs);
      const double expected = 2.0 * (1.0 / p - 1.0 - alpha);
      const double rel = std::abs(slope - expected) / expected;
      const std::string prefix = alpha_p_key(alpha, p);
      report.set_summary(prefix + "/slope", slope);
      report.set_summary(prefix + "/expected_slope", expected);
      report.set_summary(prefix + "/slope_rel_error", rel);
      report.add_check(prefix + ": fitted slope of log2 r_k vs 2(1/p-1-alpha), relative error", rel,
                       Relation::less, thresholds::kSlopeRelative);
    }
  }
  report.set_summary("collapse_max_rel_dev", collapse);
  report.set_summary("mode_max_rel_dev", modes);
  report.set_summary("hardy_closed_form_max_rel_dev", hardy_dev);
  report.add_check("|sigma_{2^{2k}+1} f_k| == 1/A_{2^{2k}+1} (relative)", collapse, Relation::less_equal,
                   thresholds::kCollapseRelative);
  report.add_check("direct and multiplier means agree (relative)", modes, Relation::less_equal,
                   thresholds::kModeAgreement);
  report.add_check("||f_k||_{H_p} == 2^{2k(1-1/p)} (relative)", hardy_dev, Relation::less_equal,
                   thresholds::kHardyExact);
  return report;
}

// ---------------------------------------------------------------------------

ExperimentReport run_theorem2(const GridSpec& grid, unsigned jobs) {
  const Resolution res = grid.resolution();
  require_theorem_domain(grid);
  require_atom_levels(grid, res);
  require_seeds(grid);
  const std::size_t m_max = order_cap(grid, res);
  if (m_max < 2) throw ValidationError("theorem2 needs m_max >= 2");
  const auto keys = atom_grid(grid);
  const auto ops = operators_for(grid.alphas, m_max);

  std::vector<std::size_t> cuts;
  for (std::size_t m = 1; m <= m_max; m *= 2) cuts.push_back(m);
  if (cuts.back() != m_max) cuts.push_back(m_max);
  const std::size_t half = m_max / 2;

  struct Row {
    double hardy_p = 0.0;  // ||a||_{H_p}^p
    std::vector<double> partial;  // T at each cut
    double at_half = 0.0;
    double vanish = 0.0;
  };
  const auto rows = parallel_map(keys.size(), jobs, [&](std::size_t i) {
    const AtomKey& key = keys[i];
    const CesaroOperator& op = operator_for(ops, key.alpha);
    const Atom atom = make_atom(key.level, key.p, key.seed, res, grid.seed_base);
    const CoeffVector c = analyze(atom.f);
    const double exponent = 2.0 - (1.0 + key.alpha) * key.p;
    const std::size_t silent = std::size_t{1} << key.level;

    Row row;
    row.hardy_p = std::pow(hardy_norm(atom.f, key.p), key.p);
    std::vector<double> scratch;
    double sum = 0.0;
    double carry = 0.0;
    std::size_t next_cut = 0;
    op.for_each_mean(c, m_max, [&](std::size_t m, std::span<const double> mean) {
      if (m <= silent) row.vanish = std::max(row.vanish, max_abs(mean));
      const double term = power_integral(mean, key.p, scratch) / std::pow(static_cast<double>(m), exponent);
      const double t = sum + term;
      carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
      sum = t;
      if (m == half) row.at_half = sum + carry;
      if (next_cut < cuts.size() && m == cuts[next_cut]) {
        row.partial.push_back(sum + carry);
        ++next_cut;
      }
    });
    row.vanish /= std::exp2(key.level / key.p);
    return row;
  });

  ExperimentReport report("theorem2", {"alpha", "p", "M", "seed", "m_cut", "partial_sum",
                                       "partial_sum_over_hardy_p"});
  report.set_parameters(to_json(grid));
  double vanish = 0.0;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (std::size_t c = 0; c < cuts.size(); ++c) {
      report.add_row({keys[i].alpha, keys[i].p, static_cast<double>(keys[i].level),
                      static_cast<double>(keys[i].seed), static_cast<double>(cuts[c]), rows[i].partial[c],
                      rows[i].partial[c] / rows[i].hardy_p});
    }
    vanish = std::max(vanish, rows[i].vanish);
  }
  for (double alpha : grid.alphas) {
    for (double p : grid.ps) {
      double normalized = 0.0;
      double tail = 0.0;
      for (std::size_t i = 0; i < keys.size(); ++i) {
        if (keys[i].alpha != alpha || keys[i].p != p) continue;
        const double full = rows[i].partial.back();
        normalized = std::max(normalized, full / rows[i].hardy_p);
        tail = std::max(tail, (full - rows[i].at_half) / rows[i].at_half);
      }
      const std::string prefix = alpha_p_key(alpha, p);
      report.set_summary(prefix + "/max_partial_sum_over_hardy_p", normalized);
      report.set_summary(prefix + "/max_relative_tail", tail);
      report.add_check(prefix + ": (T(m_max) - T(m_max/2)) / T(m_max/2)", tail, Relation::less,
                       thresholds::kSeriesTail);
    }
  }
  report.set_summary("vanishing_below_2M_max_rel", vanish);
  report.add_check("sigma_m a = 0 for m <= 2^M (relative to 2^{M/p})", vanish, Relation::less_equal,
                   thresholds::kAtomVanishing);
  return report;
}

// ---------------------------------------------------------------------------

ExperimentReport check_identities(const GridSpec& grid, unsigned jobs) {
  const Resolution res = grid.resolution();
  require_nonempty(grid.alphas.empty(), "alpha");
  require_nonempty(grid.ps.empty(), "p");
  for (double alpha : grid.alphas) require_summability_alpha(alpha);
  for (double p : grid.ps) {
    if (!(p > 0.0)) throw ValidationError("p must be positive");
  }
  require_seeds(grid);
  const std::size_t cells = res.cells();

  double dirichlet_dev = 0.0;
  for (int m = 0; m <= res.bits(); ++m) {
    const StepFunction d = dirichlet_kernel(std::size_t{1} << m, res);
    const Subcube around_zero{m, 0};
    const double height = std::ldexp(1.0, m);
    for (PointIndex x = 0; x < cells; ++x) {
      const double closed = around_zero.contains(x) ? height : 0.0;
      dirichlet_dev = std::max(dirichlet_dev, std::abs(d[x] - closed));
    }
  }

  double partition_violations = 0.0;
  std::vector<int> cover(cells);
  for (int m = 1; m <= res.bits(); ++m) {
    std::fill(cover.begin(), cover.end(), 0);
    for (const auto& piece : partition_complement(m, res)) {
      for (PointIndex x : interval_indices(piece.cube, res)) ++cover[x];
    }
    const Subcube around_zero{m, 0};
    for (PointIndex x = 0; x < cells; ++x) {
      const int expected = around_zero.contains(x) ? 0 : 1;
      if (cover[x] != expected) partition_violations += 1.0;
    }
  }

  const auto ops = operators_for(grid.alphas, cells);
  struct Sample {
    PointIndex t = 0;
    std::size_t n = 0;
    std::vector<double> commutation;        // per alpha
    std::vector<double> hardy_f, hardy_g;   // per p
    std::vector<double> square_dev;         // per p
  };
  const auto samples = parallel_map(grid.seed_count(), jobs, [&](std::size_t i) {
    Rng rng(grid.seed_base, kIdentityStream, grid.seed_first + i);
    Sample s;
    const StepFunction f = random_function(res, rng);
    s.t = static_cast<PointIndex>(rng.below(cells));
    s.n = 1 + static_cast<std::size_t>(rng.below(cells));
    const CoeffVector c = analyze(f);
    const CoeffVector conj = conjugate_transform(c, s.t);
    for (const auto& op : ops) {
      const StepFunction lhs = synthesize(op.mean_coeffs(conj, s.n));
      const StepFunction rhs = synthesize(conjugate_transform(op.mean_coeffs(c, s.n), s.t));
      double dev = 0.0;
      for (PointIndex x = 0; x < cells; ++x) dev = std::max(dev, std::abs(lhs[x] - rhs[x]));
      s.commutation.push_back(dev);
    }
    const StepFunction g = synthesize(conj);
    const StepFunction sf = square_function(f);
    const StepFunction sg = square_function(g);
    for (double p : grid.ps) {
      s.hardy_f.push_back(hardy_norm(f, p));
      s.hardy_g.push_back(hardy_norm(g, p));
      const double a = lp_norm(sf, p);
      s.square_dev.push_back(std::abs(lp_norm(sg, p) - a) / a);
    }
    return s;
  });

  ExperimentReport report("identities", {"seed", "t", "n", "alpha", "p", "commutation_dev", "hardy_norm",
                                         "hardy_norm_conjugate", "isometry_rel_dev",
                                         "square_function_rel_dev"});
  report.set_parameters(to_json(grid));
  double commutation = 0.0;
  double isometry = 0.0;
  double square = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i];
    for (std::size_t a = 0; a < grid.alphas.size(); ++a) {
      commutation = std::max(commutation, s.commutation[a]);
      for (std::size_t q = 0; q < grid.ps.size(); ++q) {
        const double dev = std::abs(s.hardy_g[q] - s.hardy_f[q]) / s.hardy_f[q];
        isometry = std::max(isometry, dev);
        square = std::max(square, s.square_dev[q]);
        report.add_row({static_cast<double>(grid.seed_first + i), static_cast<double>(s.t),
                        static_cast<double>(s.n), grid.alphas[a], grid.ps[q], s.commutation[a],
                        s.hardy_f[q], s.hardy_g[q], dev, s.square_dev[q]});
      }
    }
  }
  report.set_summary("dirichlet_max_abs_dev", dirichlet_dev);
  report.set_summary("partition_violations", partition_violations);
  report.set_summary("commutation_max_abs_dev", commutation);
  report.set_summary("hardy_isometry_max_rel_dev", isometry);
  report.set_summary("square_function_isometry_max_rel_dev", square);
  report.add_check("D_{2^m} equals 2^m 1_{I_m} exactly", dirichlet_dev, Relation::equal, 0.0);
  report.add_check("complement partition is exact (cells covered != once)", partition_violations,
                   Relation::equal, 0.0);
  report.add_check("conjugation commutes with sigma_n exactly", commutation, Relation::equal, 0.0);
  report.add_check("||conjugate||_{H_p} == ||f||_{H_p} (relative)", isometry, Relation::less_equal,
                   thresholds::kIsometryRelative);
  return report;
}

// ---------------------------------------------------------------------------

ExperimentReport fwht_selftest(const GridSpec& grid, unsigned jobs) {
  const Resolution res = grid.resolution();
  if (res.bits() > 12) throw ValidationError("fwht-selftest compares against an O(4^N) sum; use N <= 12");
  require_seeds(grid);
  const std::size_t cells = res.cells();

  struct Row {
    double naive_dev = 0.0;
    double roundtrip_dev = 0.0;
    double parseval_dev = 0.0;
  };
  const auto rows = parallel_map(grid.seed_count(), jobs, [&](std::size_t i) {
    Rng rng(grid.seed_base, kSelftestStream, grid.seed_first + i);
    const StepFunction f = random_function(res, rng);
    const CoeffVector c = analyze(f);
    Row row;
    for (std::size_t n = 0; n < cells; ++n) {
      double s = 0.0;
      for (PointIndex x = 0; x < cells; ++x) s += f[x] * walsh_eval(n, x);
      row.naive_dev = std::max(row.naive_dev, std::abs(s * res.cell_measure() - c[n]));
    }
    const StepFunction back = synthesize(c);
    for (PointIndex x = 0; x < cells; ++x) row.roundtrip_dev = std::max(row.roundtrip_dev, std::abs(back[x] - f[x]));
    std::vector<double> sq(cells);
    for (std::size_t n = 0; n < cells; ++n) sq[n] = c[n] * c[n];
    const double energy = pairwise_sum(sq);
    for (PointIndex x = 0; x < cells; ++x) sq[x] = f[x] * f[x];
    const double l2 = pairwise_sum(sq) * res.cell_measure();
    row.parseval_dev = std::abs(energy - l2) / l2;
    return row;
  });

  ExperimentReport report("fwht-selftest", {"seed", "naive_max_dev", "roundtrip_max_dev", "parseval_rel_dev"});
  report.set_parameters(to_json(grid));
  Row worst;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    report.add_row({static_cast<double>(grid.seed_first + i), rows[i].naive_dev, rows[i].roundtrip_dev,
                    rows[i].parseval_dev});
    worst.naive_dev = std::max(worst.naive_dev, rows[i].naive_dev);
    worst.roundtrip_dev = std::max(worst.roundtrip_dev, rows[i].roundtrip_dev);
    worst.parseval_dev = std::max(worst.parseval_dev, rows[i].parseval_dev);
  }

  double ortho = 0.0;
  for (std::size_t m = 0; m < cells; ++m) {
    const CoeffVector c = analyze(sample_walsh(m, res));
    for (std::size_t n = 0; n < cells; ++n) ortho = std::max(ortho, std::abs(c[n] - (n == m ? 1.0 : 0.0)));
  }

  report.set_summary("naive_max_dev", worst.naive_dev);
  report.set_summary("roundtrip_max_dev", worst.roundtrip_dev);
  report.set_summary("parseval_max_rel_dev", worst.parseval_dev);
  report.set_summary("orthonormality_max_dev", ortho);
  report.add_check("fast transform matches the defining sum", worst.naive_dev, Relation::less_equal,
                   thresholds::kTransformEntry);
  report.add_check("synthesize(analyze(f)) == f", worst.roundtrip_dev, Relation::less_equal,
                   thresholds::kTransformEntry);
  report.add_check("Parseval identity (relative)", worst.parseval_dev, Relation::less_equal,
                   thresholds::kParsevalRelative);
  report.add_check("analyze(w_m) is the unit vector e_m", ortho, Relation::less_equal,
                   thresholds::kTransformEntry);
  return report;
}

}  // namespace wclab
