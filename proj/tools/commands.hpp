#pragma once

#include "markovj/analysis.hpp"
#include "markovj/evaluation.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace markovj::cli {

/// Options shared by all subcommands. An unset depth means the subcommand's
/// own default.
struct Options {
  RunConfig run;
  bool depth_given = false;
  std::optional<std::string> output;
};

inline constexpr int kDefaultDepth = 9;
/// Depth budget for `value` when --depth is not given.
inline constexpr int kValueDepth = 30;

inline constexpr std::string_view kTableHeader =
    "path,level,p,q,c,Jq_re,Jq_im,j_re,j_im,log_eps,quad_err";

/// Thrown for bad user input; the message is shown verbatim and the exit code is 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One row of a table export, as read back from CSV or JSON.
struct TableRow {
  std::string path;
  int level = 0;
  std::uint64_t p = 0;
  std::uint64_t q = 1;
  std::string c;
  double Jq_re = 0.0, Jq_im = 0.0;
  double j_re = 0.0, j_im = 0.0;
  double log_eps = 0.0;
  double quad_err = 0.0;
};

/// 12 significant digits.
std::string format_number(double x);

TableRow to_row(const CycleValue& v);
std::string csv_row(const TableRow& row);
std::vector<TableRow> parse_table_csv(std::istream& in);
std::vector<TableRow> parse_table_json(std::istream& in);

/// Resolves "p/q", "0" or a tree path ("", "LRL", "tip:0/1") to a node with
/// level <= max_depth. Throws UsageError naming the nearest tree nodes.
TreeNode resolve_node(std::string_view target, int max_depth);

/// Subcommands write their primary output to `out` and diagnostics to `err`;
/// each returns the process exit code.
int cmd_tree(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_value(const std::string& target, const Options& opts, std::ostream& out, std::ostream& err);
int cmd_table(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_interlace(const Options& opts, double tol, InterlaceMode mode, std::ostream& out,
                  std::ostream& err);
int cmd_asymptotics(const Options& opts, std::uint64_t max_q, std::ostream& out, std::ostream& err);
int cmd_bounds(const Options& opts, int k0, bool computed_envelope, std::ostream& out,
               std::ostream& err);
int cmd_verify(const Options& opts, std::ostream& out, std::ostream& err);

}  // namespace markovj::cli
