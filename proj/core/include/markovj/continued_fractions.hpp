#pragma once

#include "markovj/bigint.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace markovj {

enum class Turn : char { Left = 'L', Right = 'R' };

/// Period of a purely periodic minus continued fraction
/// (a1, a2, ...) = a1 - 1/(a2 - 1/(...)), partial quotients in {2,3,4}.
///
/// The raw digit order is kept as constructed (it is what the tree figures
/// show). Equality is cyclic: two periods compare equal iff one is a rotation
/// of the other.
class Period {
 public:
  explicit Period(std::vector<int> digits);

  std::span<const int> digits() const noexcept { return digits_; }
  std::size_t size() const noexcept { return digits_.size(); }
  int operator[](std::size_t i) const { return digits_[i]; }
  int digit_sum() const noexcept;

  /// Lexicographically least rotation.
  Period canonical() const;
  /// The rotation starting at digits()[start].
  Period rotated(std::size_t start) const;
  Period reversed() const;

  friend bool operator==(const Period& a, const Period& b);

 private:
  std::vector<int> digits_;
};

/// Accepts "2,3,4" and the run-length sugar "2,3_5,4".
Period parse_period(std::string_view text);
/// Comma separated, runs expanded.
std::string format_period(const Period& p);
/// Comma separated with runs of length >= 2 written as "d_n".
std::string format_period_runs(const Period& p);

/// Concatenation (a1..ar, b1..bs); the raw word is not canonicalized.
Period conjunction(const Period& left, const Period& right);

/// (2, 3 repeated `level` times, 4): the period at `level` on the all-left branch.
Period leftmost_period(int level);

/// Period of a child given its parent and the parent's two Farey neighbours.
/// A left child sits between the parent and the left neighbour, so its word is
/// parent (.) left_neighbour; a right child is right_neighbour (.) parent.
/// The all-left branch is the exception and follows leftmost_period.
Period child_period(const Period& parent, const Period& left_neighbour,
                    const Period& right_neighbour, Turn turn,
                    bool parent_on_leftmost_branch, int child_level);

inline constexpr std::string_view kLeftTipPath = "tip:0/1";
inline constexpr std::string_view kRightTipPath = "tip:1/2";

/// Period of the node reached from the root (2,3,4) by `path` (a word over
/// {L,R}); the tip labels map to (3) and (2,4).
Period period_of_node(std::string_view path);

/// Attracting fixed point of x -> a1 - 1/(a2 - ... - 1/x), iterated from 2
/// until successive sweeps differ by less than tol.
double eval_periodic(const Period& p, double tol = 1e-14);

struct Matrix2 {
  BigInt a, b, c, d;

  BigInt trace() const { return a + d; }
  BigInt det() const { return a * d - b * c; }
};

/// Product of the step matrices [[a_i,-1],[1,0]].
Matrix2 period_matrix(const Period& p);

/// One element w^(i) = (a0, tail) of the cycle of the reduction map
/// z -> z-1 (z >= 1), z -> z/(1-z) (z < 1).
struct CycleState {
  int a0 = 0;
  /// Index into the period where the purely periodic tail starts.
  std::size_t rotation = 0;
  double value = 0.0;
  /// Galois conjugate of value.
  double conj_value = 0.0;
};

/// Full cycle w^(1), ..., w^(l) starting from w^(1) = w - 1, where w is the
/// purely periodic value of p and l = sum(a_i - 1). Each state is re-checked
/// against one step of the floating-point reduction map; throws
/// std::runtime_error on disagreement.
std::vector<CycleState> cycle_states(const Period& p);

/// One step of the reduction map.
double reduction_step(double z);

}  // namespace markovj
