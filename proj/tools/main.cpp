#include "commands.hpp"

#include "markovj/result_cache.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace markovj;

int main(int argc, char** argv) {
  CLI::App app{"Cycle integrals of the j-function on Markov geodesics"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::Options opts;
  std::string format = "csv";
  std::string cache;
  app.add_option("--depth", opts.run.depth, "Tree depth (root is level 1)");
  app.add_option("--tol", opts.run.tol, "Absolute quadrature tolerance on J/q")
      ->capture_default_str();
  app.add_option("--series-order", opts.run.series_order, "Highest q-power kept in j")
      ->capture_default_str();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--cache", cache, "JSON-lines result cache");
  app.add_option("--jobs", opts.run.jobs, "Worker threads (0 = all cores)");
  app.add_option("-o,--output", opts.output, "Write to a file instead of stdout");

  auto* tree = app.add_subcommand("tree", "List tree nodes with Markov numbers and periods");

  std::string target;
  auto* value = app.add_subcommand("value", "J/q and j at one node");
  value->add_option("node", target, "p/q, a path over {L,R}, 'root' or a tip label")->required();

  auto* table = app.add_subcommand("table", "All nodes to depth, sorted by p/q");

  double slack = 1e-9;
  bool segment = false;
  auto* interlace = app.add_subcommand("interlace", "Check j(w_n) against its two predecessors");
  interlace->add_option("--slack", slack, "Betweenness tolerance")->capture_default_str();
  interlace->add_flag("--segment", segment, "Distance to the complex segment instead of per part");

  std::uint64_t max_q = 120;
  auto* asymptotics = app.add_subcommand("asymptotics", "Growth of q_n, log c_n and log eps");
  asymptotics->add_option("--max-q", max_q, "Largest denominator enumerated")->capture_default_str();

  int k0 = 12;
  bool computed = false;
  auto* bounds = app.add_subcommand("bounds", "Constants of the bound chain");
  bounds->add_option("--k0", k0, "First level of the tail")->capture_default_str();
  bounds->add_flag("--computed-envelope", computed, "Use J/q extrema computed to --depth");

  auto* verify = app.add_subcommand("verify", "Run every check; exit 0 iff all hard checks pass");

  CLI11_PARSE(app, argc, argv);

  opts.depth_given = app.count("--depth") > 0;
  opts.run.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  if (!cache.empty()) opts.run.cache = cache;

  try {
    if (*tree) return cli::cmd_tree(opts, std::cout, std::cerr);
    if (*value) return cli::cmd_value(target, opts, std::cout, std::cerr);
    if (*table) return cli::cmd_table(opts, std::cout, std::cerr);
    if (*interlace) {
      return cli::cmd_interlace(opts, slack,
                                segment ? InterlaceMode::Segment : InterlaceMode::Componentwise,
                                std::cout, std::cerr);
    }
    if (*asymptotics) return cli::cmd_asymptotics(opts, max_q, std::cout, std::cerr);
    if (*bounds) return cli::cmd_bounds(opts, k0, computed, std::cout, std::cerr);
    if (*verify) return cli::cmd_verify(opts, std::cout, std::cerr);
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const CacheError& e) {
    std::cerr << "cache error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
