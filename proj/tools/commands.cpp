#include "commands.hpp"

#include "markovj/result_cache.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

namespace markovj::cli {

namespace {

using nlohmann::json;
using boost::multiprecision::uint128_t;

std::string path_label(const std::string& path) { return path.empty() ? "root" : path; }

double rounded(double x) { return std::stod(format_number(x)); }

int depth_or(const Options& opts, int fallback) {
  return opts.depth_given ? opts.run.depth : fallback;
}

RunConfig checked(const Options& opts, int default_depth) {
  RunConfig config = opts.run;
  config.depth = depth_or(opts, default_depth);
  try {
    validate(config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return config;
}

JSeries series_for(const RunConfig& config) {
  if (config.cache) {
    auto file = *config.cache;
    file += ".jseries";
    return load_or_compute_series(file, config.series_order);
  }
  return j_coefficients(config.series_order);
}

std::vector<CycleValue> tree_values(const MarkovTree& tree, const RunConfig& config,
                                    std::ostream& err) {
  const JSeries series = series_for(config);
  CacheStats stats;
  auto values = evaluate_tree_cached(tree, series, config, &stats);
  if (config.cache) {
    err << fmt::format("cache {}: {} reused, {} computed{}\n", config.cache->string(), stats.reused,
                       stats.computed, stats.stale ? " (stale file replaced)" : "");
  }
  return values;
}

// The whole output is assembled first so a failure never leaves a partial file.
void emit(const Options& opts, std::ostream& out, const std::string& text) {
  if (!opts.output) {
    out << text;
    return;
  }
  std::ofstream f(*opts.output, std::ios::binary | std::ios::trunc);
  f << text;
  if (!f) throw std::runtime_error(fmt::format("cannot write {}", *opts.output));
}

json row_json(const TableRow& r) {
  return json{{"path", r.path},
              {"level", r.level},
              {"p", r.p},
              {"q", r.q},
              {"c", r.c},
              {"Jq_re", rounded(r.Jq_re)},
              {"Jq_im", rounded(r.Jq_im)},
              {"j_re", rounded(r.j_re)},
              {"j_im", rounded(r.j_im)},
              {"log_eps", rounded(r.log_eps)},
              {"quad_err", rounded(r.quad_err)}};
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

// ---------------------------------------------------------------------------
// Resolving user targets

struct Rational {
  std::uint64_t p, q;
};

bool less(const Rational& a, const FareyFraction& b) { return uint128_t(a.p) * b.q < uint128_t(b.p) * a.q; }
bool same(const Rational& a, const FareyFraction& b) { return uint128_t(a.p) * b.q == uint128_t(b.p) * a.q; }

// Tree fractions closest to t among nodes with level <= max_depth.
std::vector<FareyFraction> nearest_nodes(Rational t, int max_depth) {
  const FareyFraction half{1, 2};
  if (!less(t, half)) return {half};
  if (t.p == 0) return {{0, 1}};
  FareyFraction lo{0, 1};
  FareyFraction hi{1, 2};
  FareyFraction node{1, 3};
  for (int level = 1; level <= max_depth; ++level) {
    if (same(t, node)) return {node};
    if (less(t, node)) {
      hi = node;
    } else {
      lo = node;
    }
    node = {lo.p + hi.p, lo.q + hi.q};
  }
  return {lo, hi};
}

std::string list_fractions(const std::vector<FareyFraction>& fs) {
  std::vector<std::string> parts;
  for (const auto& f : fs) parts.push_back(format_fraction(f));
  return fmt::format("{}", fmt::join(parts, " and "));
}

// ---------------------------------------------------------------------------
// Verify

struct Check {
  std::string name;
  bool hard = true;
  bool passed = true;
  double measured = 0.0;
  double bound = 0.0;
  std::string detail;

  double margin() const { return bound - measured; }
};

Check count_check(std::string name, std::size_t failures, std::string detail) {
  return {std::move(name), true, failures == 0, static_cast<double>(failures), 0.0, std::move(detail)};
}

std::size_t structure_failures(const MarkovTree& tree, int depth) {
  std::size_t failures = 0;
  for (const auto& node : tree.nodes()) {
    if (node.level > depth) continue;
    const BigInt& c = node.c();
    const auto q = static_cast<long long>(node.farey.q);
    const Matrix2 m = period_matrix(node.period);
    const bool ok = satisfies_markov_equation(node.triple) &&
                    static_cast<long long>(node.period.size()) == q &&
                    node.period.digit_sum() == 3 * q && m.trace() == 3 * c &&
                    (node.k * node.k + 1) % c == 0 && node.form.discriminant() == 9 * c * c - 4;
    if (!ok) ++failures;
  }
  return failures;
}

std::vector<Check> run_checks(const MarkovTree& tree, std::span<const CycleValue> values, int depth) {
  std::vector<Check> checks;
  checks.push_back(count_check("markov structure", structure_failures(tree, depth),
                               "Markov equation, period length q, digit sum 3q, trace 3c, c | k^2+1"));

  const QRecursionReport qr = check_q_recursion(tree, depth);
  checks.push_back(count_check("q recursion",
                               qr.local_failures + qr.matrix_failures + qr.lambda_failures,
                               fmt::format("{} nodes; local, run-matrix and lambda checks",
                                           qr.nodes_checked)));

  const JRecursionReport jr = check_J_recursion(tree, values, depth);
  checks.push_back({"delta re bound", true, jr.flagged == 0, jr.max_ratio_re, 1.0,
                    fmt::format("max |Re delta| / bound over {} nodes", jr.entries.size())});
  checks.push_back({"delta im bound", true, jr.flagged == 0, jr.max_ratio_im, 1.0,
                    fmt::format("max |Im delta| / bound over {} nodes", jr.entries.size())});

  const InterlacingReport ir = check_interlacing(tree, values, depth, 1e-9);
  checks.push_back({"interlacing", true, ir.max_violation <= 1e-6, ir.max_violation, 1e-6,
                    fmt::format("{} nodes, {} outside at tol 1e-9", ir.entries.size(),
                                ir.violations)});

  const GRangeReport gr = gg_prime_ranges(200);
  for (const RangeCheck& rc : gr.checks) {
    const double margin = std::min(rc.sampled_min - (rc.stated_lo - rc.lo_slack),
                                   rc.stated_hi + rc.hi_slack - rc.sampled_max);
    checks.push_back({rc.name + " range", true, rc.inside && rc.tight, -margin, 0.0,
                      fmt::format("sampled [{:.6f}, {:.6f}] vs stated [{}, {}]{}", rc.sampled_min,
                                  rc.sampled_max, rc.stated_lo, rc.stated_hi,
                                  rc.tight ? "" : ", not within 2%")});
  }

  const CoincidenceReport cr = coincidence_bound(tree, depth, 20000);
  checks.push_back({"coincidence bound", true, cr.passed(), cr.max_ratio, 1.0,
                    fmt::format("{} pairs, max shared prefix {}", cr.pairs, cr.max_shared)});

  const BoundChain chain = theorem2_constants(12);
  const std::array<std::pair<double, double>, 10> expected{{
      {chain.re.bound, 1.41173},
      {chain.im.bound, 1.23611},
      {chain.J_sqrt_n_re_lo, 3206.24623},
      {chain.J_sqrt_n_re_hi, 3491.04708},
      {chain.J_sqrt_n_im_lo, -4.40533},
      {chain.J_sqrt_n_im_hi, 3.170734},
      {chain.j_re_lo, 681.50081},
      {chain.j_re_hi, 742.03641},
      {chain.j_im_lo, -0.93637},
      {chain.j_im_hi, 0.67396},
  }};
  double worst = 0.0;
  for (const auto& [got, want] : expected) worst = std::max(worst, std::abs(got - want));
  checks.push_back({"bound chain k0=12", true, worst <= 1e-3, worst, 1e-3,
                    "max deviation from the reference constants"});

  const Envelope env = envelope_of(tree, values, depth);
  checks.push_back({"envelope", false, true, env.re_lo, kReferenceEnvelope.re_lo,
                    fmt::format("Re J/q in [{:.8f}, {:.8f}], Im J/q in [{:.6f}, {:.6f}]",
                                env.re_lo, env.re_hi, env.im_lo, env.im_hi)});
  return checks;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string format_number(double x) { return fmt::format("{:.12g}", x); }

TableRow to_row(const CycleValue& v) {
  return {v.path,        v.level,       v.farey.p,    v.farey.q,
          to_decimal(v.c), v.J_over_q.real(), v.J_over_q.imag(), v.j.real(),
          v.j.imag(),    v.log_eps,     v.quad_error};
}

std::string csv_row(const TableRow& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{}", path_label(r.path), r.level, r.p, r.q, r.c,
                     format_number(r.Jq_re), format_number(r.Jq_im), format_number(r.j_re),
                     format_number(r.j_im), format_number(r.log_eps), format_number(r.quad_err));
}

std::vector<TableRow> parse_table_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTableHeader) {
    throw std::runtime_error("table: missing or unexpected CSV header");
  }
  std::vector<TableRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 11) {
      throw std::runtime_error(fmt::format("table: expected 11 fields, got {}", f.size()));
    }
    TableRow r;
    r.path = f[0] == "root" ? "" : f[0];
    r.level = std::stoi(f[1]);
    r.p = std::stoull(f[2]);
    r.q = std::stoull(f[3]);
    r.c = f[4];
    r.Jq_re = std::stod(f[5]);
    r.Jq_im = std::stod(f[6]);
    r.j_re = std::stod(f[7]);
    r.j_im = std::stod(f[8]);
    r.log_eps = std::stod(f[9]);
    r.quad_err = std::stod(f[10]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<TableRow> parse_table_json(std::istream& in) {
  const json doc = json::parse(in);
  std::vector<TableRow> rows;
  for (const auto& j : doc.at("rows")) {
    TableRow r;
    r.path = j.at("path").get<std::string>();
    r.level = j.at("level").get<int>();
    r.p = j.at("p").get<std::uint64_t>();
    r.q = j.at("q").get<std::uint64_t>();
    r.c = j.at("c").get<std::string>();
    r.Jq_re = j.at("Jq_re").get<double>();
    r.Jq_im = j.at("Jq_im").get<double>();
    r.j_re = j.at("j_re").get<double>();
    r.j_im = j.at("j_im").get<double>();
    r.log_eps = j.at("log_eps").get<double>();
    r.quad_err = j.at("quad_err").get<double>();
    rows.push_back(std::move(r));
  }
  return rows;
}

TreeNode resolve_node(std::string_view target, int max_depth) {
  std::string path;
  if (target == "root") {
    path = "";
  } else if (target == kLeftTipPath || target == kRightTipPath ||
             target.find_first_not_of("LR") == std::string_view::npos) {
    path = std::string(target);
  } else {
    FareyFraction f;
    try {
      f = parse_fraction(target);
    } catch (const std::invalid_argument& e) {
      throw UsageError(fmt::format("'{}' is neither a fraction p/q nor a tree path: {}", target,
                                   e.what()));
    }
    if (f.q == 0) throw UsageError(fmt::format("'{}' has a zero denominator", target));
    const Rational t{f.p, f.q};
    const std::uint64_t g = std::gcd(f.p, f.q);
    std::string why;
    if (2 * uint128_t(f.p) > f.q) {
      why = "it lies outside [0, 1/2]";
    } else if (g != 1) {
      why = "it is not in lowest terms";
    }
    if (!why.empty()) {
      throw UsageError(fmt::format("{} is not a tree node ({}); nearest nodes: {}", target, why,
                                   list_fractions(nearest_nodes(t, max_depth))));
    }
    path = path_of_fraction(f);
    const int level = path.starts_with("tip:") ? 0 : static_cast<int>(path.size()) + 1;
    if (level > max_depth) {
      throw UsageError(fmt::format(
          "{} sits at level {}, beyond depth {}; nearest nodes within depth: {}", target, level,
          max_depth, list_fractions(nearest_nodes(t, max_depth))));
    }
  }
  if (!path.starts_with("tip:") && static_cast<int>(path.size()) + 1 > max_depth) {
    throw UsageError(fmt::format("path '{}' is deeper than depth {}", path, max_depth));
  }
  try {
    return node_at_path(path);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// ---------------------------------------------------------------------------

int cmd_tree(const Options& opts, std::ostream& out, std::ostream&) {
  const RunConfig config = checked(opts, kDefaultDepth);
  const MarkovTree tree(config.depth);
  std::string text;
  if (config.format == OutputFormat::Json) {
    json nodes = json::array();
    for (const auto& n : tree.nodes()) {
      nodes.push_back({{"path", n.path},
                       {"level", n.level},
                       {"p", n.farey.p},
                       {"q", n.farey.q},
                       {"c", to_decimal(n.c())},
                       {"period", format_period_runs(n.period)}});
    }
    text = json{{"depth", config.depth}, {"nodes", nodes}}.dump(2) + "\n";
  } else {
    text = "path,level,fraction,c,period\n";
    for (const auto& n : tree.nodes()) {
      text += fmt::format("{},{},{},{},\"{}\"\n", path_label(n.path), n.level, format_fraction(n.farey),
                          to_decimal(n.c()), format_period_runs(n.period));
    }
  }
  emit(opts, out, text);
  return 0;
}

int cmd_value(const std::string& target, const Options& opts, std::ostream& out, std::ostream&) {
  const RunConfig config = checked(opts, kValueDepth);
  const TreeNode node = resolve_node(target, config.depth);
  const JSeries series = series_for(config);
  const TableRow row = to_row(integrate_J(node, series, config.tol));
  std::string text;
  if (config.format == OutputFormat::Json) {
    text = row_json(row).dump(2) + "\n";
  } else {
    text = fmt::format("{}\n{}\n", kTableHeader, csv_row(row));
  }
  emit(opts, out, text);
  return 0;
}

int cmd_table(const Options& opts, std::ostream& out, std::ostream& err) {
  const RunConfig config = checked(opts, kDefaultDepth);
  const MarkovTree tree(config.depth);
  const auto values = tree_values(tree, config, err);
  std::string text;
  if (config.format == OutputFormat::Json) {
    json rows = json::array();
    for (std::size_t i : tree.sorted_by_fraction()) rows.push_back(row_json(to_row(values[i])));
    text = json{{"columns", split_csv(std::string(kTableHeader))}, {"rows", rows}}.dump(2) + "\n";
  } else {
    text = std::string(kTableHeader) + "\n";
    for (std::size_t i : tree.sorted_by_fraction()) text += csv_row(to_row(values[i])) + "\n";
  }
  emit(opts, out, text);
  return 0;
}

int cmd_interlace(const Options& opts, double tol, InterlaceMode mode, std::ostream& out,
                  std::ostream& err) {
  const RunConfig config = checked(opts, kDefaultDepth);
  if (!(tol >= 0.0)) throw UsageError("interlacing tolerance must be >= 0");
  const MarkovTree tree(config.depth);
  const auto values = tree_values(tree, config, err);
  const InterlacingReport r = check_interlacing(tree, values, config.depth, tol, mode);
  const char* mode_name = mode == InterlaceMode::Segment ? "segment" : "componentwise";

  std::string text;
  if (config.format == OutputFormat::Json) {
    json violations = json::array();
    for (const auto& e : r.entries) {
      if (e.passed) continue;
      violations.push_back({{"path", e.path},
                            {"level", e.level},
                            {"re_violation", e.re_violation},
                            {"im_violation", e.im_violation}});
    }
    json branches = json::array();
    for (const auto& b : r.branches) {
      branches.push_back({{"branch", b.branch},
                          {"first_level", b.first_level},
                          {"last_level", b.last_level},
                          {"onset_level", b.onset_level ? json(*b.onset_level) : json(nullptr)}});
    }
    text = json{{"depth", config.depth},
                {"tol", tol},
                {"mode", mode_name},
                {"checked", r.entries.size()},
                {"violations", r.violations},
                {"max_violation", r.max_violation},
                {"failing", violations},
                {"branches", branches}}
               .dump(2) +
           "\n";
  } else {
    text = fmt::format("interlacing ({}) depth={} tol={}: {} nodes checked, {} violations, max {:.3e}\n",
                       mode_name, config.depth, tol, r.entries.size(), r.violations,
                       r.max_violation);
    for (const auto& e : r.entries) {
      if (e.passed) continue;
      text += fmt::format("  violation {} (level {}): re {:.3e}, im {:.3e}\n", path_label(e.path),
                          e.level, e.re_violation, e.im_violation);
    }
    text += "branch,first_level,last_level,onset_level\n";
    for (const auto& b : r.branches) {
      text += fmt::format("{},{},{},{}\n", b.branch, b.first_level, b.last_level,
                          b.onset_level ? std::to_string(*b.onset_level) : "none");
    }
  }
  emit(opts, out, text);
  return 0;
}

int cmd_asymptotics(const Options& opts, std::uint64_t max_q, std::ostream& out, std::ostream&) {
  const RunConfig config = checked(opts, kDefaultDepth);
  if (max_q < 2) throw UsageError("--max-q must be >= 2");
  const AsymptoticsReport r = asymptotics_report(max_q);
  std::string text;
  if (config.format == OutputFormat::Json) {
    json windows = json::array();
    for (const auto& w : r.windows) {
      windows.push_back({{"n_begin", w.n_begin},
                         {"n_end", w.n_end},
                         {"mean_q_ratio", w.mean_q_ratio},
                         {"mean_logc_ratio", w.mean_logc_ratio},
                         {"mean_logeps_ratio", w.mean_logeps_ratio}});
    }
    text = json{{"max_q", r.max_q},
                {"count", r.count},
                {"head", r.head},
                {"counting_formula_holds", r.counting_formula_holds},
                {"q_ratio_limit", q_ratio_limit()},
                {"q_trend_monotone", r.q_trend_monotone},
                {"logc_trend_monotone", r.logc_trend_monotone},
                {"windows", windows}}
               .dump(2) +
           "\n";
  } else {
    text = fmt::format("{} Markov numbers with q <= {} (first q: {})\n", r.count, r.max_q,
                       fmt::join(r.head, ", "));
    text += fmt::format("counting formula: {}\n", r.counting_formula_holds ? "holds" : "FAILS");
    text += fmt::format("q_n/sqrt(n) -> {:.6f}: {}\n", q_ratio_limit(),
                        r.q_trend_monotone ? "monotone" : "not monotone");
    text += fmt::format("log(c_n) sqrt(C/n) -> 1: {}\n",
                        r.logc_trend_monotone ? "monotone" : "not monotone");
    text += "n_begin,n_end,mean_q_ratio,mean_logc_ratio,mean_logeps_ratio\n";
    for (const auto& w : r.windows) {
      text += fmt::format("{},{},{:.8f},{:.8f},{:.8f}\n", w.n_begin, w.n_end, w.mean_q_ratio,
                          w.mean_logc_ratio, w.mean_logeps_ratio);
    }
  }
  emit(opts, out, text);
  return 0;
}

int cmd_bounds(const Options& opts, int k0, bool computed_envelope, std::ostream& out,
               std::ostream& err) {
  const RunConfig config = checked(opts, 12);
  if (k0 < 2) throw UsageError("--k0 must be >= 2");
  Envelope env = kReferenceEnvelope;
  if (computed_envelope) {
    const MarkovTree tree(config.depth);
    const auto values = tree_values(tree, config, err);
    env = envelope_of(tree, values, config.depth);
  }
  const BoundChain c = theorem2_constants(k0, env);
  std::string text;
  auto chain_json = [](const DeltaChain& d) {
    return json{{"tail_run", d.tail_run}, {"inner_runs", d.inner_runs}, {"last", d.last},
                {"multi_run", d.multi_run}, {"single_run", d.single_run}, {"bound", d.bound}};
  };
  if (config.format == OutputFormat::Json) {
    text = json{{"k0", c.k0},
                {"envelope", {env.re_lo, env.re_hi, env.im_lo, env.im_hi}},
                {"delta_re", chain_json(c.re)},
                {"delta_im", chain_json(c.im)},
                {"J_sqrt_n_re", {c.J_sqrt_n_re_lo, c.J_sqrt_n_re_hi}},
                {"J_sqrt_n_im", {c.J_sqrt_n_im_lo, c.J_sqrt_n_im_hi}},
                {"j_re", {c.j_re_lo, c.j_re_hi}},
                {"j_im", {c.j_im_lo, c.j_im_hi}}}
               .dump(2) +
           "\n";
  } else {
    auto line = [](const char* name, const DeltaChain& d) {
      return fmt::format("{}: tail {:.6f} + inner {:.6f} + last {:.6f} = {:.6f}; single run {:.6f}; "
                         "bound {:.5f}\n",
                         name, d.tail_run, d.inner_runs, d.last, d.multi_run, d.single_run, d.bound);
    };
    text = fmt::format("k0 = {}\nenvelope: Re J/q in [{:.8f}, {:.8f}], Im J/q in [{:.6f}, {:.6f}]\n",
                       c.k0, env.re_lo, env.re_hi, env.im_lo, env.im_hi);
    text += line("delta re", c.re);
    text += line("delta im", c.im);
    text += fmt::format("J/sqrt(n): Re in [{:.5f}, {:.5f}], Im in [{:.6f}, {:.6f}]\n",
                        c.J_sqrt_n_re_lo, c.J_sqrt_n_re_hi, c.J_sqrt_n_im_lo, c.J_sqrt_n_im_hi);
    text += fmt::format("j: Re in [{:.5f}, {:.5f}], Im in [{:.5f}, {:.5f}]\n", c.j_re_lo,
                        c.j_re_hi, c.j_im_lo, c.j_im_hi);
  }
  emit(opts, out, text);
  return 0;
}

int cmd_verify(const Options& opts, std::ostream& out, std::ostream& err) {
  const RunConfig config = checked(opts, kDefaultDepth);
  const MarkovTree tree(config.depth);
  const auto values = tree_values(tree, config, err);
  const auto checks = run_checks(tree, values, config.depth);

  const auto hard = std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.hard; });
  const auto passed = std::count_if(checks.begin(), checks.end(),
                                    [](const Check& c) { return c.hard && c.passed; });
  std::string text;
  if (config.format == OutputFormat::Json) {
    json list = json::array();
    for (const auto& c : checks) {
      list.push_back({{"name", c.name},
                      {"status", !c.hard ? "info" : c.passed ? "pass" : "fail"},
                      {"measured", c.measured},
                      {"bound", c.bound},
                      {"margin", c.margin()},
                      {"detail", c.detail}});
    }
    text = json{{"depth", config.depth}, {"passed", passed == hard}, {"checks", list}}.dump(2) + "\n";
  } else {
    for (const auto& c : checks) {
      text += fmt::format("[{}] {}: measured {:.6g}, bound {:.6g}, margin {:.6g} ({})\n",
                          !c.hard ? "INFO" : c.passed ? "PASS" : "FAIL", c.name, c.measured,
                          c.bound, c.margin(), c.detail);
    }
    text += fmt::format("{}/{} hard checks passed at depth {}\n", passed, hard, config.depth);
  }
  emit(opts, out, text);
  return passed == hard ? 0 : 1;
}

}  // namespace markovj::cli
