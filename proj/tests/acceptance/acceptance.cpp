// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Usage: markovj_acceptance <appendix.csv>

#include "markovj/analysis.hpp"
#include "markovj/cycle_integral.hpp"
#include "markovj/evaluation.hpp"
#include "markovj/markov_tree.hpp"
#include "markovj/modular_j.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace markovj;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

struct GoldenRow {
  FareyFraction f;
  double Jq_re;
  std::optional<double> Jq_im;
  double j_re;
  std::optional<double> j_im;
};

std::vector<GoldenRow> read_golden(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  std::string line;
  std::getline(in, line);
  std::vector<GoldenRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string field; std::getline(ss, field, ',');) f.push_back(field);
    while (f.size() < 6) f.emplace_back();
    auto opt = [](const std::string& s) { return s.empty() ? std::nullopt : std::optional<double>(std::stod(s)); };
    rows.push_back({{std::stoull(f[0]), std::stoull(f[1])}, std::stod(f[2]), opt(f[3]), std::stod(f[4]), opt(f[5])});
  }
  return rows;
}

std::string fmt_double(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

// Relative error for printed parts, absolute size for parts printed as absent.
double part_error(double got, const std::optional<double>& want) {
  if (!want) return std::abs(got);
  return std::abs(got - *want) / std::abs(*want);
}

struct Shared {
  JSeries series = j_coefficients(kDefaultSeriesOrder);
  MarkovTree tree9{9};
  std::vector<CycleValue> values9;
};

Outcome golden_tables(const Shared& s, const std::string& file) {
  const auto rows = read_golden(file);
  double worst = 0.0;
  std::string worst_at;
  for (const auto& row : rows) {
    const CycleValue v = integrate_J(node_at_path(path_of_fraction(row.f)), s.series);
    for (double e : {part_error(v.J_over_q.real(), row.Jq_re), part_error(v.J_over_q.imag(), row.Jq_im),
                     part_error(v.j.real(), row.j_re), part_error(v.j.imag(), row.j_im)}) {
      if (e > worst) {
        worst = e;
        worst_at = format_fraction(row.f);
      }
    }
  }
  // The rows are the first and last 40 fractions of the depth-12 tree in real order.
  const MarkovTree tree(12);
  const auto order = tree.sorted_by_fraction();
  bool ordered = rows.size() == 80;
  for (std::size_t k = 0; ordered && k < 40; ++k) {
    ordered = tree[order[k]].farey == rows[k].f &&
              tree[order[order.size() - 40 + k]].farey == rows[40 + k].f;
  }
  return {worst < 1e-7 && ordered,
          std::to_string(rows.size()) + " rows, max error " + fmt_double("%.2e", worst) + " at " + worst_at +
              " (limit 1e-7), table positions " + (ordered ? "match" : "DIFFER")};
}

Outcome arc_average(const Shared& s) {
  const auto avg = average_integral(s.series);
  return {std::abs(avg.real() - 753.982) <= 1e-3 && std::abs(avg.imag()) <= 1e-3,
          "integral " + fmt_double("%.8f", avg.real()) + " (expected 753.982 +- 1e-3)"};
}

Outcome special_values(const Shared& s) {
  const double at_i = std::abs(j_eval({0.0, 1.0}, s.series) - 1728.0);
  const double at_rho = std::abs(j_eval(std::polar(1.0, std::numbers::pi / 3.0), s.series));
  double worst_im = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double t = std::numbers::pi / 3.0 + k * (std::numbers::pi / 3.0) / 999.0;
    worst_im = std::max(worst_im, std::abs(j_eval(std::polar(1.0, t), s.series).imag()));
  }
  return {at_i <= 1e-9 && at_rho <= 1e-9 && worst_im < 1e-10,
          "|j(i)-1728| " + fmt_double("%.1e", at_i) + ", |j(rho)| " + fmt_double("%.1e", at_rho) +
              ", max |Im j| on arc " + fmt_double("%.1e", worst_im)};
}

Outcome exact_structure(const Shared& s) {
  std::size_t bad = 0;
  for (const auto& n : s.tree9.nodes()) {
    const BigInt& c = n.c();
    const bool ok = satisfies_markov_equation(n.triple) && n.period.size() == n.farey.q &&
                    static_cast<std::uint64_t>(n.period.digit_sum()) == 3 * n.farey.q &&
                    period_matrix(n.period).trace() == 3 * c && (n.k * n.k + 1) % c == 0;
    bad += ok ? 0 : 1;
  }
  const auto q = check_q_recursion(s.tree9, 9);
  return {bad == 0 && q.passed(),
          std::to_string(s.tree9.size()) + " nodes, " + std::to_string(bad) + " structural failures, " +
              std::to_string(q.local_failures + q.matrix_failures + q.lambda_failures) + " recursion failures"};
}

Outcome recursion_bounds(const Shared& s) {
  const auto r = check_J_recursion(s.tree9, s.values9, 9, 1e-6);
  return {r.flagged == 0, std::to_string(r.entries.size()) + " nodes, max |delta|/bound re " +
                              fmt_double("%.2e", r.max_ratio_re) + ", im " + fmt_double("%.2e", r.max_ratio_im)};
}

Outcome interlacing(const Shared& s) {
  const auto r = check_interlacing(s.tree9, s.values9, 9, 1e-9);
  return {r.max_violation <= 1e-6, std::to_string(r.entries.size()) + " nodes, " + std::to_string(r.violations) +
                                       " outside at tol 1e-9, max violation " + fmt_double("%.2e", r.max_violation)};
}

Outcome bound_chain() {
  const auto c = theorem2_constants(12);
  const std::vector<std::pair<double, double>> pairs{
      {c.re.bound, 1.41173},      {c.im.bound, 1.23611},     {c.J_sqrt_n_re_lo, 3206.24623},
      {c.J_sqrt_n_re_hi, 3491.04708}, {c.J_sqrt_n_im_lo, -4.40533}, {c.J_sqrt_n_im_hi, 3.170734},
      {c.j_re_lo, 681.50081},     {c.j_re_hi, 742.03641},    {c.j_im_lo, -0.93637},
      {c.j_im_hi, 0.67396}};
  double worst = 0.0;
  for (const auto& [got, want] : pairs) worst = std::max(worst, std::abs(got - want));
  return {worst <= 1e-3, "10 constants at k0 = 12, max deviation " + fmt_double("%.2e", worst)};
}

Outcome envelope(const Shared& s) {
  const MarkovTree tree(12);
  const auto values = evaluate_tree(tree, s.series, kDefaultQuadTol);
  const Envelope e = envelope_of(tree, values, 12);
  const Envelope& ref = kReferenceEnvelope;
  const bool ok = std::abs(e.re_lo - ref.re_lo) <= 1e-3 && std::abs(e.re_hi - ref.re_hi) <= 1e-3 &&
                  e.im_lo >= ref.im_lo - 1e-3 && e.im_hi <= ref.im_hi + 1e-3;
  return {ok, std::to_string(values.size()) + " nodes: Re J/q in [" + fmt_double("%.8f", e.re_lo) + ", " +
                  fmt_double("%.8f", e.re_hi) + "], Im J/q in [" + fmt_double("%.6f", e.im_lo) + ", " +
                  fmt_double("%.1e", e.im_hi) + "]"};
}

Outcome g_ranges() {
  const auto r = gg_prime_ranges(200);
  std::string detail;
  for (const auto& c : r.checks) {
    if (!detail.empty()) detail += "; ";
    detail += c.name + " [" + fmt_double("%.6f", c.sampled_min) + ", " + fmt_double("%.6f", c.sampled_max) + "]";
    if (!c.inside) detail += " OUTSIDE";
    if (!c.tight) detail += " LOOSE";
  }
  return {r.passed(), detail};
}

Outcome asymptotics() {
  const auto r = asymptotics_report(120);
  const auto& last = r.windows.back();
  return {r.q_trend_monotone && r.logc_trend_monotone,
          std::to_string(r.count) + " Markov numbers, " + std::to_string(r.windows.size()) +
              " dyadic windows; last q_n/sqrt(n) " + fmt_double("%.5f", last.mean_q_ratio) + " -> " +
              fmt_double("%.5f", q_ratio_limit()) + ", log(c_n) sqrt(C/n) " +
              fmt_double("%.5f", last.mean_logc_ratio) + " -> 1"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <appendix.csv>\n", argv[0]);
    return 2;
  }
  const std::string golden = argv[1];

  Shared shared;
  shared.values9 = evaluate_tree(shared.tree9, shared.series, kDefaultQuadTol);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"golden tables", [&] { return golden_tables(shared, golden); }},
      {"arc average", [&] { return arc_average(shared); }},
      {"special values", [&] { return special_values(shared); }},
      {"exact structure", [&] { return exact_structure(shared); }},
      {"local recursion bounds", [&] { return recursion_bounds(shared); }},
      {"interlacing", [&] { return interlacing(shared); }},
      {"bound chain", [] { return bound_chain(); }},
      {"envelope", [&] { return envelope(shared); }},
      {"g ranges", [] { return g_ranges(); }},
      {"asymptotic trends", [] { return asymptotics(); }},
  };

  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s: %s (%.2fs)\n", o.passed ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    failed += o.passed ? 0 : 1;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
