#pragma once

#include "markovj/bigint.hpp"
#include "markovj/continued_fractions.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace markovj {

/// Ordered solution of a^2 + b^2 + c^2 = 3abc.
struct MarkovTriple {
  BigInt a, b, c;

  friend bool operator==(const MarkovTriple&, const MarkovTriple&) = default;
};

bool satisfies_markov_equation(const MarkovTriple& t);

/// Left child (c, b, 3bc - a) and right child (a, c, 3ac - b).
/// Throws std::invalid_argument if t is not a Markov triple.
std::pair<MarkovTriple, MarkovTriple> vieta_children(const MarkovTriple& t);

struct FareyFraction {
  std::uint64_t p = 0;
  std::uint64_t q = 1;

  double value() const { return static_cast<double>(p) / static_cast<double>(q); }
  friend bool operator==(const FareyFraction&, const FareyFraction&) = default;
};

/// p/q < r/s as rationals.
bool farey_less(const FareyFraction& x, const FareyFraction& y);

/// (p_x + p_y) / (q_x + q_y); throws std::invalid_argument if the mediant is
/// reducible (the inputs are not Farey neighbours).
FareyFraction farey_median(const FareyFraction& x, const FareyFraction& y);

/// Throws std::invalid_argument on malformed text ("p/q", or "0").
FareyFraction parse_fraction(std::string_view text);
std::string format_fraction(const FareyFraction& f);

/// Integer quadratic form A x^2 + B xy + C y^2.
struct QuadraticForm {
  BigInt a, b, c;

  BigInt discriminant() const { return b * b - 4 * a * c; }
  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

/// The unique 0 <= k < c with a*k = b (mod c). Throws std::domain_error if a
/// is not invertible modulo c, or if c does not divide k^2 + 1.
BigInt markov_k(const MarkovTriple& t);

/// [c, 3c - 2k, (k^2+1)/c - 3k], discriminant 9c^2 - 4.
QuadraticForm markov_form(const BigInt& c, const BigInt& k);

/// (3c - 2k + sqrt(9c^2 - 4)) / (2c).
double markov_irrational(const BigInt& c, const BigInt& k);

/// sqrt(9 - 4/c^2).
double markov_constant(const BigInt& c);

struct TreeNode {
  /// Word over {L,R} from the root; kLeftTipPath / kRightTipPath for the tips.
  std::string path;
  /// Root (2,1,5) is level 1; the two tips are level 0.
  int level = 0;
  MarkovTriple triple;
  FareyFraction farey;
  Period period;
  BigInt k;
  QuadraticForm form;
  /// Indices of the Farey neighbours this node is the mediant of; nullopt on tips.
  std::optional<std::size_t> left_neighbour;
  std::optional<std::size_t> right_neighbour;

  bool is_tip() const noexcept { return level == 0; }
  const BigInt& c() const noexcept { return triple.c; }
};

/// All nodes of the Markov-Hurwitz / Farey tree down to a fixed level, plus the
/// two boundary tips. Nodes are immutable once built and may be shared across
/// threads.
///
/// Memory: level n holds 2^(n-1) nodes whose period length q grows at most like
/// Fibonacci(n+3) and whose Markov numbers have O(q) digits; depth 12 is a few
/// megabytes, depth 20 several hundred.
class MarkovTree {
 public:
  explicit MarkovTree(int depth);

  int depth() const noexcept { return depth_; }
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const TreeNode& operator[](std::size_t i) const { return nodes_[i]; }

  const TreeNode& left_tip() const { return nodes_[0]; }
  const TreeNode& right_tip() const { return nodes_[1]; }
  const TreeNode& root() const { return nodes_[2]; }

  std::optional<std::size_t> find_path(std::string_view path) const;
  std::optional<std::size_t> find_fraction(const FareyFraction& f) const;
  const TreeNode& at_path(std::string_view path) const;

  /// Node indices sorted by Farey fraction as real numbers.
  std::vector<std::size_t> sorted_by_fraction() const;

 private:
  int depth_;
  std::vector<TreeNode> nodes_;
  std::unordered_map<std::string, std::size_t> by_path_;
};

/// Same as MarkovTree(depth).
MarkovTree build_tree(int depth);

/// Stern-Brocot descent from the root: the tree path leading to f, or the tip
/// label for 0/1 and 1/2. Throws std::invalid_argument if f is not reduced or
/// lies outside [0, 1/2].
std::string path_of_fraction(const FareyFraction& f);

/// Markov triple at the node carrying f, by walking path_of_fraction with
/// Vieta involutions (no period construction).
MarkovTriple markov_triple_of(const FareyFraction& f);

/// The node at `path` built on its own, without the rest of the tree; the
/// neighbour indices are left empty. Throws std::invalid_argument on a
/// malformed path.
TreeNode node_at_path(std::string_view path);

}  // namespace markovj
