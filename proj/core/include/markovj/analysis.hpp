#pragma once

#include "markovj/cycle_integral.hpp"
#include "markovj/markov_tree.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

// Empirical checks over a tree of computed cycle values. Functions taking
// `values` expect one CycleValue per tree node, in tree order.
namespace markovj {

/// 2 / (1 + sqrt 5).
inline constexpr double kInvGolden = 0.6180339887498948482;
inline constexpr double kDeltaReConstant = 115181.57371;
inline constexpr double kDeltaImConstant = 100853.23866;
inline constexpr double kZagierC = 0.18071704711507;

// ---------------------------------------------------------------------------
// Path structure

struct PathDecomposition {
  std::size_t node = 0;
  int level = 0;
  /// Levels r_1 = 1 < r_2 < ... < r_m at which the path changes direction.
  std::vector<int> turn_levels;
  /// w_{n-1}, the parent (a tip for the root).
  std::size_t immediate = 0;
  /// w_{r_m - 1}, the node above the last turn (the base tip for a single run).
  std::size_t turn = 0;
  /// w_0: the 0/1 tip on the left half of the tree, the 1/2 tip on the right.
  std::size_t base = 0;
  /// Nodes w_1..w_{n-1} along the path, by level (index 0 holds w_0).
  std::vector<std::size_t> ancestors;

  int m() const noexcept { return static_cast<int>(turn_levels.size()); }
};

/// Throws std::invalid_argument for tips.
PathDecomposition decompose_path(const MarkovTree& tree, std::size_t node);

// ---------------------------------------------------------------------------
// Interlacing

enum class InterlaceMode { Componentwise, Segment };

struct InterlaceEntry {
  std::size_t node = 0;
  std::string path;
  int level = 0;
  /// Distance outside the predecessor interval (0 when inside), per part; in
  /// segment mode re_violation holds the distance to the segment and
  /// im_violation is 0.
  double re_violation = 0.0;
  double im_violation = 0.0;
  bool passed = true;
};

struct BranchOnset {
  /// Path prefix of the run's first node followed by the run direction, e.g. "RL*".
  std::string branch;
  int first_level = 0;
  int last_level = 0;
  /// Smallest level from which every checked node on the branch passes; nullopt
  /// if the deepest one fails.
  std::optional<int> onset_level;
};

struct InterlacingReport {
  double tol = 0.0;
  std::vector<InterlaceEntry> entries;
  std::vector<BranchOnset> branches;
  std::size_t violations = 0;
  double max_violation = 0.0;
};

/// j(w_n) between j(w_{n-1}) and j(w_{r_m - 1}) for 2 <= n <= depth, with slack
/// tol. Throws std::invalid_argument if values do not cover the tree.
InterlacingReport check_interlacing(const MarkovTree& tree, std::span<const CycleValue> values,
                                    int depth, double tol,
                                    InterlaceMode mode = InterlaceMode::Componentwise);

// ---------------------------------------------------------------------------
// Recursions

struct QRecursionReport {
  std::size_t nodes_checked = 0;
  std::size_t local_failures = 0;
  std::size_t matrix_failures = 0;
  std::size_t lambda_failures = 0;
  std::vector<std::string> failures;

  bool passed() const noexcept {
    return local_failures == 0 && matrix_failures == 0 && lambda_failures == 0;
  }
};

/// Exact integer checks of q_n = q_{n-1} + q_{r_m-1}, of the run-matrix product
/// (q_n, q_{r_m-1}) = [[n-r_m+1,1],[1,0]] prod [[r_{j+1}-r_j,1],[1,0]] (q_0, q_0'),
/// and of q_n >= lambda_j q_{r_{j-1}} for j >= 2.
QRecursionReport check_q_recursion(const MarkovTree& tree, int depth);

double delta_bound_re(int level);
double delta_bound_im(int level);

struct DeltaEntry {
  std::string path;
  int level = 0;
  std::complex<double> delta;
  double ratio_re = 0.0;
  double ratio_im = 0.0;
  bool flagged = false;
};

struct JRecursionReport {
  double slack = 0.0;
  std::vector<DeltaEntry> entries;
  std::size_t flagged = 0;
  double max_ratio_re = 0.0;
  double max_ratio_im = 0.0;
};

/// delta_w = J(w) - J(u) - J(v) against the level bounds, 2 <= n <= depth.
JRecursionReport check_J_recursion(const MarkovTree& tree, std::span<const CycleValue> values,
                                   int depth, double slack = 1e-6);

// ---------------------------------------------------------------------------
// g, g' ranges

/// Real-part kernel g(x, y, theta).
double g_function(double x, double y, double theta);
/// Imaginary-part kernel g'(x, y, theta).
double g_prime_function(double x, double y, double theta);

struct RangeCheck {
  std::string name;
  double stated_lo = 0.0;
  double stated_hi = 0.0;
  /// Half a unit in the last printed digit of each endpoint; "inside" allows it.
  double lo_slack = 0.0;
  double hi_slack = 0.0;
  double sampled_min = 0.0;
  double sampled_max = 0.0;
  bool inside = false;
  /// Sampled extrema within 2% of the stated endpoints.
  bool tight = false;
};

struct GRangeReport {
  int grid = 0;
  std::vector<RangeCheck> checks;

  bool passed() const noexcept;
};

/// Samples g and g' on a grid^3 lattice over the state box and the conjugate
/// box. Throws std::invalid_argument if grid < 100.
GRangeReport gg_prime_ranges(int grid);

// ---------------------------------------------------------------------------
// Coincidence lemma

/// 10 (2/(1+sqrt 5))^{2(r-1)}.
double coincidence_envelope(int r);

struct TailSumCheck {
  int k0 = 0;
  double sum = 0.0;
  double bound = 0.0;
  bool passed = false;
};

struct CoincidenceReport {
  std::size_t pairs = 0;
  std::size_t violations = 0;
  int max_shared = 0;
  double max_ratio = 0.0;
  std::vector<TailSumCheck> tail_sums;

  bool passed() const noexcept;
};

/// Random pairs plus lexicographic neighbours from the cycle states of all
/// nodes with level <= depth; checks |u - v| <= coincidence_envelope(r) where r
/// is the number of shared leading partial quotients, and the closed form of
/// sum_{k >= k0} b(k) for k0 = 1..20.
CoincidenceReport coincidence_bound(const MarkovTree& tree, int depth, int samples,
                                    std::uint64_t seed = 20211019);

// ---------------------------------------------------------------------------
// Asymptotics

/// pi sqrt(2/3)
double q_ratio_limit();
/// sqrt(3) / (pi sqrt(2C)), the slope of log eps in q.
double log_eps_slope();

struct AsymptoticWindow {
  std::size_t n_begin = 0;
  std::size_t n_end = 0;
  double mean_q_ratio = 0.0;
  double mean_logc_ratio = 0.0;
  double mean_logeps_ratio = 0.0;
};

struct AsymptoticsReport {
  std::uint64_t max_q = 0;
  std::size_t count = 0;
  std::vector<std::uint64_t> head;
  bool counting_formula_holds = false;
  std::vector<AsymptoticWindow> windows;
  bool q_trend_monotone = false;
  bool logc_trend_monotone = false;
};

/// All Farey fractions in [0, 1/2] with q <= max_q, ordered by (q, c), against
/// q_n ~ pi sqrt(2n/3), log c_n ~ sqrt(n/C) and log eps ~ slope q_n + log 3/2.
/// Windows are dyadic in n.
AsymptoticsReport asymptotics_report(std::uint64_t max_q);

// ---------------------------------------------------------------------------
// Bound chain

struct Envelope {
  double re_lo = 0.0;
  double re_hi = 0.0;
  double im_lo = 0.0;
  double im_hi = 0.0;
};

/// Bounds on Re/Im (J/q) over levels <= 12 as printed with the appendix data.
inline constexpr Envelope kReferenceEnvelope{1251.36168, 1359.5674, -0.4813, 0.0};

/// min/max of J/q over nodes with level <= max_level (tips included).
Envelope envelope_of(const MarkovTree& tree, std::span<const CycleValue> values, int max_level);

struct DeltaChain {
  /// lambda_k sum over [k0, r_k) divided by q_n.
  double tail_run = 0.0;
  /// Runs j >= k+1.
  double inner_runs = 0.0;
  /// delta_n / q_n.
  double last = 0.0;
  /// tail_run + inner_runs + last (paths with m >= 2).
  double multi_run = 0.0;
  /// Single-run paths (m = 1).
  double single_run = 0.0;
  /// max(multi_run, single_run).
  double bound = 0.0;
};

struct BoundChain {
  int k0 = 0;
  Envelope envelope;
  DeltaChain re;
  DeltaChain im;
  double J_sqrt_n_re_lo = 0.0, J_sqrt_n_re_hi = 0.0;
  double J_sqrt_n_im_lo = 0.0, J_sqrt_n_im_hi = 0.0;
  double j_re_lo = 0.0, j_re_hi = 0.0;
  double j_im_lo = 0.0, j_im_hi = 0.0;
};

/// Throws std::invalid_argument if k0 < 2.
BoundChain theorem2_constants(int k0, const Envelope& envelope = kReferenceEnvelope);

}  // namespace markovj
