#include "markovj/analysis.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace markovj {

namespace {

using boost::multiprecision::uint128_t;

void require_values(const MarkovTree& tree, std::span<const CycleValue> values) {
  if (values.size() != tree.size()) {
    throw std::invalid_argument(fmt::format("expected {} node values, got {}", tree.size(),
                                            values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].path != tree[i].path) {
      throw std::invalid_argument(fmt::format("value {} is for '{}', expected node '{}'", i,
                                              values[i].path, tree[i].path));
    }
  }
}

double outside(double x, double a, double b) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  return std::max({0.0, lo - x, x - hi});
}

double distance_to_segment(std::complex<double> x, std::complex<double> a, std::complex<double> b) {
  const std::complex<double> ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(x - a);
  const double t = std::clamp(((x - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(x - (a + t * ab));
}

// Path prefix up to the start of the final run, plus the run direction.
std::string branch_key(const std::string& path) {
  std::size_t start = path.size() - 1;
  while (start > 0 && path[start - 1] == path[start]) --start;
  return path.substr(0, start) + path.back() + '*';
}

struct Mat2 {
  std::uint64_t a, b, c, d;
};

Mat2 mul(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

Mat2 run_matrix(std::uint64_t length) { return {length, 1, 1, 0}; }

// One quadratic from a cycle: a0 followed by the period read cyclically from
// `rotation`; a0 == 0 marks a purely periodic value.
struct Quadratic {
  const Period* period;
  /// Purely periodic value starting at each index of the period.
  const std::vector<double>* periodic;
  std::size_t rotation;
  int a0;
  double value;

  int digit(std::size_t k) const {
    const std::size_t n = period->size();
    if (a0 != 0) {
      return k == 0 ? a0 : (*period)[(rotation + k - 1) % n];
    }
    return (*period)[(rotation + k) % n];
  }

  /// Value of the stream with its first k digits removed.
  double tail(std::size_t k) const {
    if (k == 0) return value;
    const std::size_t n = period->size();
    return (*periodic)[(a0 != 0 ? rotation + k - 1 : rotation + k) % n];
  }
};

constexpr std::size_t kPrefixCap = 256;

std::size_t shared_prefix(const Quadratic& x, const Quadratic& y) {
  std::size_t k = 0;
  while (k < kPrefixCap && x.digit(k) == y.digit(k)) ++k;
  return k;
}

// |x - y| through the common prefix map M = prod [[a,-1],[1,0]] (det 1):
// M(s) - M(t) = (s - t) / ((c s + d)(c t + d)), which stays accurate long after
// x - y itself drops below double resolution.
double gap(const Quadratic& x, const Quadratic& y, std::size_t shared) {
  if (shared == 0) return std::abs(x.value - y.value);
  double c = 0.0, d = 1.0;  // bottom row of M
  double scale = 0.0;       // log of the factor taken out of (c, d)
  for (std::size_t k = 0; k < shared; ++k) {
    const double a = x.digit(k);
    const double next_c = a * c + d;
    d = -c;
    c = next_c;
    if (std::abs(c) > 1e100) {
      c *= 1e-100;
      d *= 1e-100;
      scale += 100.0 * std::log(10.0);
    }
  }
  const double s = x.tail(shared);
  const double t = y.tail(shared);
  const double den = std::log(std::abs(c * s + d)) + std::log(std::abs(c * t + d)) + 2.0 * scale;
  return std::abs(s - t) * std::exp(-den);
}

bool lexicographic_less(const Quadratic& x, const Quadratic& y) {
  for (std::size_t k = 0; k < 64; ++k) {
    const int dx = x.digit(k);
    const int dy = y.digit(k);
    if (dx != dy) return dx < dy;
  }
  return x.value < y.value;
}

std::vector<std::uint64_t> totients(std::uint64_t n) {
  std::vector<std::uint64_t> phi(n + 1);
  std::iota(phi.begin(), phi.end(), std::uint64_t{0});
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (phi[p] != p) continue;
    for (std::uint64_t m = p; m <= n; m += p) phi[m] -= phi[m] / p;
  }
  return phi;
}

template <class Get>
bool trend_is_monotone(const std::vector<AsymptoticWindow>& windows, Get get, double limit) {
  if (windows.size() < 2) return false;
  bool increasing = true;
  bool decreasing = true;
  bool approaching = true;
  for (std::size_t i = 1; i < windows.size(); ++i) {
    const double prev = get(windows[i - 1]);
    const double cur = get(windows[i]);
    increasing = increasing && cur >= prev;
    decreasing = decreasing && cur <= prev;
    approaching = approaching && std::abs(cur - limit) <= std::abs(prev - limit);
  }
  return (increasing || decreasing) && approaching;
}

DeltaChain delta_chain(double constant, int k0) {
  const double rho = kInvGolden;
  DeltaChain d;
  d.tail_run = constant / 4.0 * std::pow(rho, 2 * k0 - 3);
  d.inner_runs = constant / k0 * std::pow(rho, 2 * k0 - 1);
  d.last = constant / (k0 + 1) * std::pow(rho, 2 * k0);
  d.multi_run = d.tail_run + d.inner_runs + d.last;
  d.single_run = constant / (k0 + 3) * std::pow(rho, 2 * k0 - 5);
  d.bound = std::max(d.multi_run, d.single_run);
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------

PathDecomposition decompose_path(const MarkovTree& tree, std::size_t node) {
  const TreeNode& w = tree[node];
  if (w.is_tip()) {
    throw std::invalid_argument("decompose_path: tips have no predecessors");
  }
  PathDecomposition d;
  d.node = node;
  d.level = w.level;
  d.turn_levels = {1};
  if (w.level == 1) {
    d.base = 0;
    d.immediate = 1;
    d.turn = 0;
    d.ancestors = {0};
    return d;
  }

  const std::string& path = w.path;
  d.base = path.front() == 'L' ? 0 : 1;
  d.ancestors.resize(static_cast<std::size_t>(w.level));
  d.ancestors[0] = d.base;
  for (int level = 1; level < w.level; ++level) {
    d.ancestors[static_cast<std::size_t>(level)] =
        *tree.find_path(std::string_view(path).substr(0, static_cast<std::size_t>(level - 1)));
  }
  // Move into level i is path[i-2], move out of it is path[i-1].
  for (int level = 2; level < w.level; ++level) {
    const auto i = static_cast<std::size_t>(level);
    if (path[i - 2] != path[i - 1]) d.turn_levels.push_back(level);
  }
  d.immediate = d.ancestors.back();
  d.turn = d.ancestors[static_cast<std::size_t>(d.turn_levels.back() - 1)];
  return d;
}

InterlacingReport check_interlacing(const MarkovTree& tree, std::span<const CycleValue> values,
                                    int depth, double tol, InterlaceMode mode) {
  require_values(tree, values);
  InterlacingReport report;
  report.tol = tol;
  std::map<std::string, std::vector<std::size_t>> by_branch;

  for (std::size_t i = 0; i < tree.size(); ++i) {
    const TreeNode& node = tree[i];
    if (node.level < 2 || node.level > depth) continue;
    const PathDecomposition d = decompose_path(tree, i);
    const auto x = values[i].j;
    const auto a = values[d.immediate].j;
    const auto b = values[d.turn].j;

    InterlaceEntry e;
    e.node = i;
    e.path = node.path;
    e.level = node.level;
    if (mode == InterlaceMode::Componentwise) {
      e.re_violation = outside(x.real(), a.real(), b.real());
      e.im_violation = outside(x.imag(), a.imag(), b.imag());
    } else {
      e.re_violation = distance_to_segment(x, a, b);
    }
    e.passed = e.re_violation <= tol && e.im_violation <= tol;
    if (!e.passed) ++report.violations;
    report.max_violation = std::max({report.max_violation, e.re_violation, e.im_violation});
    by_branch[branch_key(node.path)].push_back(report.entries.size());
    report.entries.push_back(std::move(e));
  }

  for (auto& [key, members] : by_branch) {
    std::sort(members.begin(), members.end(), [&](std::size_t x, std::size_t y) {
      return report.entries[x].level < report.entries[y].level;
    });
    BranchOnset onset;
    onset.branch = key;
    onset.first_level = report.entries[members.front()].level;
    onset.last_level = report.entries[members.back()].level;
    for (auto it = members.rbegin(); it != members.rend(); ++it) {
      if (!report.entries[*it].passed) break;
      onset.onset_level = report.entries[*it].level;
    }
    report.branches.push_back(std::move(onset));
  }
  return report;
}

QRecursionReport check_q_recursion(const MarkovTree& tree, int depth) {
  QRecursionReport report;
  auto fail = [&](std::size_t& counter, std::string what) {
    ++counter;
    if (report.failures.size() < 20) report.failures.push_back(std::move(what));
  };

  for (std::size_t i = 0; i < tree.size(); ++i) {
    const TreeNode& node = tree[i];
    if (node.level < 1 || node.level > depth) continue;
    ++report.nodes_checked;
    const PathDecomposition d = decompose_path(tree, i);
    const std::uint64_t q = node.farey.q;
    const std::uint64_t q_prev = tree[d.immediate].farey.q;
    const std::uint64_t q_turn = tree[d.turn].farey.q;
    if (q != q_prev + q_turn) {
      fail(report.local_failures, fmt::format("{}: q={} != {} + {}", node.path, q, q_prev, q_turn));
    }
    if (node.level < 2) continue;

    // a_j = q(w_{r_j - 1}); a_1 = q(w_0), a_0 = q of the other tip.
    const auto& r = d.turn_levels;
    const int m = d.m();
    auto a = [&](int j) -> std::uint64_t {
      if (j == 0) return tree[1 - d.base].farey.q;
      return tree[d.ancestors[static_cast<std::size_t>(r[static_cast<std::size_t>(j - 1)] - 1)]].farey.q;
    };
    const auto top = run_matrix(static_cast<std::uint64_t>(node.level - r.back() + 1));

    // P_j maps (a_j, a_{j-1}) to (q_n, a_m).
    Mat2 product = top;
    std::vector<Mat2> partial(static_cast<std::size_t>(m) + 1);
    partial[static_cast<std::size_t>(m)] = product;
    for (int j = m - 1; j >= 1; --j) {
      const auto len = static_cast<std::uint64_t>(r[static_cast<std::size_t>(j)] -
                                                  r[static_cast<std::size_t>(j - 1)]);
      product = mul(product, run_matrix(len));
      partial[static_cast<std::size_t>(j)] = product;
    }
    const Mat2& full = partial[1];
    const std::uint64_t qn = full.a * a(1) + full.b * a(0);
    const std::uint64_t am = full.c * a(1) + full.d * a(0);
    if (qn != q || am != a(m)) {
      fail(report.matrix_failures,
           fmt::format("{}: run-matrix product gives ({}, {}), expected ({}, {})", node.path, qn,
                       am, q, a(m)));
    }
    for (int j = 2; j <= m; ++j) {
      const std::uint64_t lambda = partial[static_cast<std::size_t>(j)].a;
      const std::size_t at = d.ancestors[static_cast<std::size_t>(r[static_cast<std::size_t>(j - 2)])];
      if (uint128_t(q) < uint128_t(lambda) * tree[at].farey.q) {
        fail(report.lambda_failures,
             fmt::format("{}: q={} < lambda_{}={} * {}", node.path, q, j, lambda, tree[at].farey.q));
      }
    }
  }
  return report;
}

double delta_bound_re(int level) {
  return kDeltaReConstant * std::pow(kInvGolden, 2 * (level - 1));
}

double delta_bound_im(int level) {
  return kDeltaImConstant * std::pow(kInvGolden, 2 * (level - 1));
}

JRecursionReport check_J_recursion(const MarkovTree& tree, std::span<const CycleValue> values,
                                   int depth, double slack) {
  require_values(tree, values);
  JRecursionReport report;
  report.slack = slack;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const TreeNode& node = tree[i];
    if (node.level < 2 || node.level > depth) continue;
    const PathDecomposition d = decompose_path(tree, i);
    DeltaEntry e;
    e.path = node.path;
    e.level = node.level;
    e.delta = values[i].J - values[d.immediate].J - values[d.turn].J;
    const double bre = delta_bound_re(node.level);
    const double bim = delta_bound_im(node.level);
    e.ratio_re = std::abs(e.delta.real()) / bre;
    e.ratio_im = std::abs(e.delta.imag()) / bim;
    e.flagged = std::abs(e.delta.real()) > bre + slack || std::abs(e.delta.imag()) > bim + slack;
    if (e.flagged) ++report.flagged;
    report.max_ratio_re = std::max(report.max_ratio_re, e.ratio_re);
    report.max_ratio_im = std::max(report.max_ratio_im, e.ratio_im);
    report.entries.push_back(std::move(e));
  }
  return report;
}

// ---------------------------------------------------------------------------

double g_function(double x, double y, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double den = ((c - x) * (c - x) + s * s) * ((c - y) * (c - y) + s * s);
  return -s * (1.0 - x * y) / den;
}

double g_prime_function(double x, double y, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double den = ((c - x) * (c - x) + s * s) * ((c - y) * (c - y) + s * s);
  return (-x - y + c * (1.0 + x * y)) / den;
}

bool GRangeReport::passed() const noexcept {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const RangeCheck& c) { return c.inside && c.tight; });
}

GRangeReport gg_prime_ranges(int grid) {
  if (grid < 100) {
    throw std::invalid_argument("gg_prime_ranges: grid must be >= 100");
  }
  // Endpoints as printed, with half a unit of their last digit.
  struct Endpoints {
    double lo, hi, lo_slack, hi_slack;
  };
  struct Box {
    const char* name;
    double lo, hi;
    Endpoints g_range, gp_range;
  };
  const std::array<Box, 2> boxes{{
      {"states", 3.0 / 8.0, 29.0 / 12.0, {-1.26964, 0.354112, 5e-6, 5e-7},
       {-1.10636, -0.07222, 5e-6, 5e-6}},
      {"conjugates", -21.0 / 8.0, -2.0 / 5.0, {-1.25946, 0.354112, 5e-6, 5e-7},
       {0.04705, 1.10636, 5e-6, 5e-6}},
  }};
  const double t0 = std::numbers::pi / 3.0;
  const double t1 = 2.0 * std::numbers::pi / 3.0;
  const auto n = static_cast<std::size_t>(grid);
  auto node = [n](double a, double b, std::size_t i) {
    return a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  };

  GRangeReport report;
  report.grid = grid;
  for (const Box& box : boxes) {
    double g_min = INFINITY, g_max = -INFINITY, gp_min = INFINITY, gp_max = -INFINITY;
    for (std::size_t it = 0; it < n; ++it) {
      const double theta = node(t0, t1, it);
      for (std::size_t ix = 0; ix < n; ++ix) {
        const double x = node(box.lo, box.hi, ix);
        for (std::size_t iy = 0; iy < n; ++iy) {
          const double y = node(box.lo, box.hi, iy);
          const double g = g_function(x, y, theta);
          const double gp = g_prime_function(x, y, theta);
          g_min = std::min(g_min, g);
          g_max = std::max(g_max, g);
          gp_min = std::min(gp_min, gp);
          gp_max = std::max(gp_max, gp);
        }
      }
    }
    auto make = [](std::string name, const Endpoints& stated, double lo, double hi) {
      RangeCheck c;
      c.name = std::move(name);
      c.stated_lo = stated.lo;
      c.stated_hi = stated.hi;
      c.lo_slack = stated.lo_slack;
      c.hi_slack = stated.hi_slack;
      c.sampled_min = lo;
      c.sampled_max = hi;
      c.inside = lo >= stated.lo - stated.lo_slack && hi <= stated.hi + stated.hi_slack;
      c.tight = std::abs(lo - stated.lo) <= 0.02 * std::abs(stated.lo) &&
                std::abs(hi - stated.hi) <= 0.02 * std::abs(stated.hi);
      return c;
    };
    report.checks.push_back(make(fmt::format("g on {}", box.name), box.g_range, g_min, g_max));
    report.checks.push_back(make(fmt::format("g' on {}", box.name), box.gp_range, gp_min, gp_max));
  }
  return report;
}

// ---------------------------------------------------------------------------

double coincidence_envelope(int r) { return 10.0 * std::pow(kInvGolden, 2 * (r - 1)); }

bool CoincidenceReport::passed() const noexcept {
  return violations == 0 &&
         std::all_of(tail_sums.begin(), tail_sums.end(), [](const TailSumCheck& t) { return t.passed; });
}

CoincidenceReport coincidence_bound(const MarkovTree& tree, int depth, int samples,
                                    std::uint64_t seed) {
  // Both orientations of every period: the tree word and its reverse (the
  // class of the Markov form) are Markov quadratics.
  std::vector<Period> periods;
  for (const auto& node : tree.nodes()) {
    if (node.level > depth) continue;
    periods.push_back(node.period);
    periods.push_back(node.period.reversed());
  }
  std::vector<std::vector<double>> periodic(periods.size());
  std::vector<Quadratic> pool;
  for (std::size_t pi = 0; pi < periods.size(); ++pi) {
    const Period& p = periods[pi];
    for (std::size_t j = 0; j < p.size(); ++j) periodic[pi].push_back(eval_periodic(p.rotated(j)));
    for (const auto& s : cycle_states(p)) {
      pool.push_back({&p, &periodic[pi], s.rotation, s.a0, s.value});
    }
    for (std::size_t j = 0; j < p.size(); ++j) {
      pool.push_back({&p, &periodic[pi], j, 0, periodic[pi][j]});
    }
  }

  CoincidenceReport report;
  auto check = [&](const Quadratic& x, const Quadratic& y) {
    const std::size_t r = shared_prefix(x, y);
    if (r == kPrefixCap) return;  // same quadratic
    ++report.pairs;
    report.max_shared = std::max(report.max_shared, static_cast<int>(r));
    const double bound = coincidence_envelope(static_cast<int>(r));
    const double g = gap(x, y, r);
    report.max_ratio = std::max(report.max_ratio, g / bound);
    if (g > bound) ++report.violations;
  };

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int s = 0; s < samples; ++s) check(pool[pick(rng)], pool[pick(rng)]);

  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lexicographic_less(pool[a], pool[b]); });
  for (std::size_t i = 1; i < order.size(); ++i) check(pool[order[i - 1]], pool[order[i]]);

  for (int k0 = 1; k0 <= 20; ++k0) {
    TailSumCheck t;
    t.k0 = k0;
    for (int k = k0; k < k0 + 400; ++k) t.sum += coincidence_envelope(k);
    t.bound = 10.0 * std::pow(kInvGolden, 2 * k0 - 3);
    t.passed = t.sum <= t.bound * (1.0 + 1e-12);
    report.tail_sums.push_back(t);
  }
  return report;
}

// ---------------------------------------------------------------------------

double q_ratio_limit() { return std::numbers::pi * std::sqrt(2.0 / 3.0); }

double log_eps_slope() {
  return std::sqrt(3.0) / (std::numbers::pi * std::sqrt(2.0 * kZagierC));
}

AsymptoticsReport asymptotics_report(std::uint64_t max_q) {
  if (max_q < 2) {
    throw std::invalid_argument("asymptotics_report: max_q must be >= 2");
  }
  struct Item {
    std::uint64_t q;
    BigInt c;
  };
  std::vector<Item> items;
  for (std::uint64_t q = 1; q <= max_q; ++q) {
    for (std::uint64_t p = 0; 2 * p <= q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      items.push_back({q, markov_triple_of({p, q}).c});
    }
  }
  std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
    return x.q != y.q ? x.q < y.q : x.c < y.c;
  });

  AsymptoticsReport report;
  report.max_q = max_q;
  report.count = items.size();
  for (std::size_t i = 0; i < std::min<std::size_t>(6, items.size()); ++i) {
    report.head.push_back(items[i].q);
  }

  const auto phi = totients(max_q);
  std::uint64_t phi_sum = 0;
  std::size_t counted = 0;
  report.counting_formula_holds = true;
  for (std::uint64_t x = 1; x <= max_q; ++x) {
    phi_sum += phi[x];
    while (counted < items.size() && items[counted].q <= x) ++counted;
    if (x >= 2 && 2 * counted != 2 + phi_sum) report.counting_formula_holds = false;
  }

  const double slope = log_eps_slope();
  const double root_c = std::sqrt(kZagierC);
  for (std::size_t begin = 1; 2 * begin - 1 <= items.size(); begin *= 2) {
    AsymptoticWindow w;
    w.n_begin = begin;
    w.n_end = 2 * begin;
    for (std::size_t n = begin; n < 2 * begin; ++n) {
      const Item& it = items[n - 1];
      const double root_n = std::sqrt(static_cast<double>(n));
      const auto q = static_cast<double>(it.q);
      w.mean_q_ratio += q / root_n;
      w.mean_logc_ratio += log_of(it.c) * root_c / root_n;
      w.mean_logeps_ratio += log_epsilon(it.c) / (slope * q + std::log(1.5));
    }
    const auto size = static_cast<double>(begin);
    w.mean_q_ratio /= size;
    w.mean_logc_ratio /= size;
    w.mean_logeps_ratio /= size;
    report.windows.push_back(w);
  }
  report.q_trend_monotone = trend_is_monotone(
      report.windows, [](const AsymptoticWindow& w) { return w.mean_q_ratio; }, q_ratio_limit());
  report.logc_trend_monotone = trend_is_monotone(
      report.windows, [](const AsymptoticWindow& w) { return w.mean_logc_ratio; }, 1.0);
  return report;
}

// ---------------------------------------------------------------------------

Envelope envelope_of(const MarkovTree& tree, std::span<const CycleValue> values, int max_level) {
  require_values(tree, values);
  Envelope e{INFINITY, -INFINITY, INFINITY, -INFINITY};
  for (std::size_t i = 0; i < tree.size(); ++i) {
    if (tree[i].level > max_level) continue;
    const auto v = values[i].J_over_q;
    e.re_lo = std::min(e.re_lo, v.real());
    e.re_hi = std::max(e.re_hi, v.real());
    e.im_lo = std::min(e.im_lo, v.imag());
    e.im_hi = std::max(e.im_hi, v.imag());
  }
  return e;
}

BoundChain theorem2_constants(int k0, const Envelope& envelope) {
  if (k0 < 2) {
    throw std::invalid_argument("theorem2_constants: k0 must be >= 2");
  }
  BoundChain chain;
  chain.k0 = k0;
  chain.envelope = envelope;
  chain.re = delta_chain(kDeltaReConstant, k0);
  chain.im = delta_chain(kDeltaImConstant, k0);

  const double sqrt_n_scale = q_ratio_limit();
  chain.J_sqrt_n_re_lo = (envelope.re_lo - chain.re.bound) * sqrt_n_scale;
  chain.J_sqrt_n_re_hi = (envelope.re_hi + chain.re.bound) * sqrt_n_scale;
  chain.J_sqrt_n_im_lo = (envelope.im_lo - chain.im.bound) * sqrt_n_scale;
  chain.J_sqrt_n_im_hi = (envelope.im_hi + chain.im.bound) * sqrt_n_scale;

  // 2 log eps / sqrt n -> 2 / sqrt C.
  const double to_j = std::sqrt(kZagierC) / 2.0;
  chain.j_re_lo = chain.J_sqrt_n_re_lo * to_j;
  chain.j_re_hi = chain.J_sqrt_n_re_hi * to_j;
  chain.j_im_lo = chain.J_sqrt_n_im_lo * to_j;
  chain.j_im_hi = chain.J_sqrt_n_im_hi * to_j;
  return chain;
}

}  // namespace markovj
