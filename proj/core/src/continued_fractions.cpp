#include "markovj/continued_fractions.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace markovj {

namespace {

constexpr int kMaxSweeps = 10000;
constexpr double kStateMatchTol = 1e-9;

void check_digits(const std::vector<int>& digits) {
  if (digits.empty()) {
    throw std::invalid_argument("period must be nonempty");
  }
  for (int d : digits) {
    if (d < 2 || d > 4) {
      throw std::invalid_argument(fmt::format("partial quotient {} outside {{2,3,4}}", d));
    }
  }
}

std::size_t least_rotation(std::span<const int> d) {
  const std::size_t n = d.size();
  std::size_t best = 0;
  for (std::size_t s = 1; s < n; ++s) {
    for (std::size_t k = 0; k < n; ++k) {
      const int x = d[(s + k) % n];
      const int y = d[(best + k) % n];
      if (x != y) {
        if (x < y) best = s;
        break;
      }
    }
  }
  return best;
}

int parse_int(std::string_view s) {
  int value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument(fmt::format("bad period token '{}'", s));
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Value of the purely periodic expansion read cyclically from `start`,
// forwards or backwards.
double eval_cyclic(std::span<const int> d, std::size_t start, bool backwards, double tol) {
  const std::size_t n = d.size();
  auto digit = [&](std::size_t k) {
    return backwards ? d[(start + n - k % n) % n] : d[(start + k) % n];
  };
  double x = 2.0;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double y = x;
    for (std::size_t k = n; k-- > 0;) {
      y = digit(k) - 1.0 / y;
    }
    if (std::abs(y - x) < tol) {
      return y;
    }
    x = y;
  }
  throw std::runtime_error("eval_periodic: fixed-point iteration did not converge");
}

}  // namespace

Period::Period(std::vector<int> digits) : digits_(std::move(digits)) { check_digits(digits_); }

int Period::digit_sum() const noexcept { return std::accumulate(digits_.begin(), digits_.end(), 0); }

Period Period::canonical() const { return rotated(least_rotation(digits_)); }

Period Period::rotated(std::size_t start) const {
  std::vector<int> out(digits_.size());
  for (std::size_t k = 0; k < digits_.size(); ++k) {
    out[k] = digits_[(start + k) % digits_.size()];
  }
  return Period(std::move(out));
}

Period Period::reversed() const { return Period(std::vector<int>(digits_.rbegin(), digits_.rend())); }

bool operator==(const Period& a, const Period& b) {
  if (a.size() != b.size()) return false;
  const auto ca = a.canonical();
  const auto cb = b.canonical();
  return std::equal(ca.digits_.begin(), ca.digits_.end(), cb.digits_.begin());
}

Period parse_period(std::string_view text) {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') {
    text = text.substr(1, text.size() - 2);
  }
  std::vector<int> digits;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto token = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (token.empty()) {
      throw std::invalid_argument("empty token in period");
    }
    const auto us = token.find('_');
    if (us == std::string_view::npos) {
      digits.push_back(parse_int(token));
    } else {
      const int d = parse_int(token.substr(0, us));
      const int reps = parse_int(token.substr(us + 1));
      if (reps < 1) {
        throw std::invalid_argument(fmt::format("bad repeat count in '{}'", token));
      }
      digits.insert(digits.end(), static_cast<std::size_t>(reps), d);
    }
  }
  return Period(std::move(digits));
}

std::string format_period(const Period& p) { return fmt::format("{}", fmt::join(p.digits(), ",")); }

std::string format_period_runs(const Period& p) {
  std::string out;
  const auto d = p.digits();
  for (std::size_t i = 0; i < d.size();) {
    std::size_t j = i;
    while (j < d.size() && d[j] == d[i]) ++j;
    if (!out.empty()) out += ',';
    out += j - i >= 2 ? fmt::format("{}_{}", d[i], j - i) : fmt::format("{}", d[i]);
    i = j;
  }
  return out;
}

Period conjunction(const Period& left, const Period& right) {
  std::vector<int> digits(left.digits().begin(), left.digits().end());
  digits.insert(digits.end(), right.digits().begin(), right.digits().end());
  return Period(std::move(digits));
}

Period leftmost_period(int level) {
  if (level < 1) {
    throw std::invalid_argument("leftmost_period: level must be >= 1");
  }
  std::vector<int> digits{2};
  digits.insert(digits.end(), static_cast<std::size_t>(level), 3);
  digits.push_back(4);
  return Period(std::move(digits));
}

Period child_period(const Period& parent, const Period& left_neighbour,
                    const Period& right_neighbour, Turn turn,
                    bool parent_on_leftmost_branch, int child_level) {
  if (turn == Turn::Left) {
    if (parent_on_leftmost_branch) {
      return leftmost_period(child_level);
    }
    return conjunction(parent, left_neighbour);
  }
  return conjunction(right_neighbour, parent);
}

Period period_of_node(std::string_view path) {
  if (path == kLeftTipPath) return Period({3});
  if (path == kRightTipPath) return Period({2, 4});

  Period left({3});
  Period right({2, 4});
  Period current({2, 3, 4});
  bool leftmost = true;
  int level = 1;
  for (char c : path) {
    if (c != 'L' && c != 'R') {
      throw std::invalid_argument(fmt::format("bad tree path '{}'", path));
    }
    const Turn turn = static_cast<Turn>(c);
    ++level;
    Period child = child_period(current, left, right, turn, leftmost, level);
    if (turn == Turn::Left) {
      right = std::move(current);
    } else {
      left = std::move(current);
      leftmost = false;
    }
    current = std::move(child);
  }
  return current;
}

double eval_periodic(const Period& p, double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("eval_periodic: tol must be positive");
  }
  return eval_cyclic(p.digits(), 0, false, tol);
}

Matrix2 period_matrix(const Period& p) {
  Matrix2 m{1, 0, 0, 1};
  for (int a : p.digits()) {
    // m * [[a,-1],[1,0]]
    Matrix2 next{m.a * a + m.b, -m.a, m.c * a + m.d, -m.c};
    m = std::move(next);
  }
  return m;
}

double reduction_step(double z) { return z >= 1.0 ? z - 1.0 : z / (1.0 - z); }

std::vector<CycleState> cycle_states(const Period& p) {
  const auto d = p.digits();
  const std::size_t n = d.size();

  // forward[j]: value of the rotation starting at j. Walking j downwards is a
  // contraction (|d/dx (a - 1/x)| < 1 for x > 1), so one solve suffices.
  std::vector<double> forward(n);
  forward[0] = eval_cyclic(d, 0, false, 1e-15);
  for (std::size_t j = n; j-- > 1;) {
    forward[j] = d[j] - 1.0 / forward[(j + 1) % n];
  }
  // backward[i]: value of (a_i, a_{i-1}, ..., a_{i+1}) repeated.
  std::vector<double> backward(n);
  backward[n - 1] = eval_cyclic(d, n - 1, true, 1e-15);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    backward[i] = d[i] - 1.0 / backward[(i + n - 1) % n];
  }

  std::vector<CycleState> states;
  states.reserve(static_cast<std::size_t>(p.digit_sum()) - n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t tail = (i + 1) % n;
    for (int a0 = d[i] - 1; a0 >= 1; --a0) {
      states.push_back({a0, tail, a0 - 1.0 / forward[tail], a0 - backward[i]});
    }
  }

  const std::size_t expected = static_cast<std::size_t>(p.digit_sum()) - n;
  if (states.size() != expected) {
    throw std::runtime_error("cycle_states: cycle length mismatch");
  }
  if (std::abs(forward[0] - 1.0 - states.front().value) > kStateMatchTol) {
    throw std::runtime_error("cycle_states: first state is not w - 1");
  }
  for (std::size_t k = 0; k < states.size(); ++k) {
    const double next = reduction_step(states[k].value);
    const double want = states[(k + 1) % states.size()].value;
    if (std::abs(next - want) > kStateMatchTol) {
      throw std::runtime_error(fmt::format(
          "cycle_states: reduction map disagrees at state {} ({} vs {})", k + 1, next, want));
    }
  }
  return states;
}

}  // namespace markovj
