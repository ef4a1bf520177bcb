#include "markovj/continued_fractions.hpp"
#include "markovj/markov_tree.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace markovj;

namespace {

// Purely periodic value and its conjugate from the fixed-point quadratic of the
// period's Moebius map, computed with plain long double arithmetic.
struct Roots {
  long double value, conj;
};

Roots periodic_roots(const std::vector<int>& digits) {
  long double a = 1, b = 0, c = 0, d = 1;
  for (int k : digits) {
    // [[a,b],[c,d]] * [[k,-1],[1,0]]
    const long double na = a * k + b, nb = -a, nc = c * k + d, nd = -c;
    a = na, b = nb, c = nc, d = nd;
  }
  // x = (a x + b)/(c x + d)  =>  c x^2 + (d - a) x - b = 0
  const long double disc = (d - a) * (d - a) + 4 * c * b;
  const long double r = std::sqrt(disc);
  return {(a - d + r) / (2 * c), (a - d - r) / (2 * c)};
}

std::vector<int> rotate(const std::vector<int>& d, std::size_t k) {
  std::vector<int> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[(i + k) % d.size()];
  return out;
}

}  // namespace

TEST(Period, ParsesPlainAndRunLengthText) {
  EXPECT_EQ(format_period(parse_period("2,3,4")), "2,3,4");
  EXPECT_EQ(format_period(parse_period("(2, 3_3, 4)")), "2,3,3,3,4");
  EXPECT_EQ(format_period_runs(parse_period("2,3,3,3,4")), "2,3_3,4");
  EXPECT_EQ(format_period_runs(parse_period("3")), "3");
}

TEST(Period, RejectsBadDigits) {
  EXPECT_THROW(parse_period(""), std::invalid_argument);
  EXPECT_THROW(parse_period("2,5"), std::invalid_argument);
  EXPECT_THROW(parse_period("1,3"), std::invalid_argument);
  EXPECT_THROW(parse_period("2,x"), std::invalid_argument);
  EXPECT_THROW(Period(std::vector<int>{}), std::invalid_argument);
}

TEST(Period, EqualityIsCyclic) {
  EXPECT_EQ(parse_period("2,3,4"), parse_period("3,4,2"));
  EXPECT_EQ(parse_period("2,3,4"), parse_period("4,2,3"));
  EXPECT_FALSE(parse_period("2,3,4") == parse_period("2,4,3"));
  EXPECT_FALSE(parse_period("3") == parse_period("3,3"));
}

TEST(Period, CanonicalIsLeastRotation) {
  EXPECT_EQ(format_period(parse_period("4,2,3,3").canonical()), "2,3,3,4");
  EXPECT_EQ(format_period(parse_period("3,4,2,4,2").canonical()), "2,3,4,2,4");
}

TEST(Period, ReversedAndRotated) {
  const Period p = parse_period("2,3,3,4");
  EXPECT_EQ(format_period(p.reversed()), "4,3,3,2");
  EXPECT_EQ(format_period(p.rotated(1)), "3,3,4,2");
  EXPECT_EQ(p.digit_sum(), 12);
}

TEST(Period, LeftmostBranch) {
  EXPECT_EQ(format_period_runs(leftmost_period(1)), "2,3,4");
  EXPECT_EQ(format_period_runs(leftmost_period(5)), "2,3_5,4");
  EXPECT_THROW(leftmost_period(0), std::invalid_argument);
}

TEST(Period, SmallTreeWords) {
  EXPECT_EQ(format_period(period_of_node("")), "2,3,4");
  EXPECT_EQ(format_period(period_of_node("L")), "2,3,3,4");
  EXPECT_EQ(format_period(period_of_node("R")), "2,4,2,3,4");
  EXPECT_EQ(format_period(period_of_node(kLeftTipPath)), "3");
  EXPECT_EQ(format_period(period_of_node(kRightTipPath)), "2,4");
  EXPECT_THROW(period_of_node("LX"), std::invalid_argument);
}

TEST(Period, ConjunctionConcatenates) {
  EXPECT_EQ(format_period(conjunction(parse_period("2,4"), parse_period("2,3,4"))), "2,4,2,3,4");
}

TEST(EvalPeriodic, MatchesQuadraticRoot) {
  for (const char* text : {"3", "2,4", "2,3,4", "2,3,3,4", "2,4,2,3,4", "4,4,2,2,3"}) {
    const Period p = parse_period(text);
    const std::vector<int> d(p.digits().begin(), p.digits().end());
    EXPECT_NEAR(eval_periodic(p), static_cast<double>(periodic_roots(d).value), 1e-13) << text;
  }
  EXPECT_NEAR(eval_periodic(parse_period("3")), (3.0 + std::sqrt(5.0)) / 2.0, 1e-14);
  EXPECT_THROW(eval_periodic(parse_period("3"), 0.0), std::invalid_argument);
}

TEST(PeriodMatrix, TraceAndDeterminant) {
  const Matrix2 m = period_matrix(parse_period("2,3,4"));
  EXPECT_EQ(m.det(), 1);
  EXPECT_EQ(m.trace(), 15);
  EXPECT_EQ(period_matrix(parse_period("3")).trace(), 3);
  EXPECT_EQ(period_matrix(parse_period("2,4")).trace(), 6);
}

TEST(CycleStates, LengthIsSumOfDigitsMinusOne) {
  for (const char* text : {"3", "2,4", "2,3,4", "2,4,2,3,4", "2,3_6,4"}) {
    const Period p = parse_period(text);
    std::size_t expected = 0;
    for (int a : p.digits()) expected += static_cast<std::size_t>(a - 1);
    EXPECT_EQ(cycle_states(p).size(), expected) << text;
  }
}

TEST(CycleStates, ValuesAndConjugatesMatchRootOracle) {
  for (const char* text : {"3", "2,4", "2,3,4", "2,3,3,4", "2,4,2,3,4", "2,3,4,2,3,3,4"}) {
    const Period p = parse_period(text);
    const std::vector<int> d(p.digits().begin(), p.digits().end());
    for (const CycleState& s : cycle_states(p)) {
      const Roots r = periodic_roots(rotate(d, s.rotation));
      EXPECT_NEAR(s.value, static_cast<double>(s.a0 - 1.0L / r.value), 1e-13) << text;
      EXPECT_NEAR(s.conj_value, static_cast<double>(s.a0 - 1.0L / r.conj), 1e-12) << text;
      EXPECT_GE(s.a0, 1);
    }
  }
}

TEST(CycleStates, FirstStateIsValueMinusOne) {
  const Period p = parse_period("2,3,4");
  EXPECT_NEAR(cycle_states(p).front().value, eval_periodic(p) - 1.0, 1e-13);
}

TEST(CycleStates, ReductionMapWalksTheCycle) {
  const auto states = cycle_states(parse_period("2,4,2,3,4"));
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double next = states[(i + 1) % states.size()].value;
    EXPECT_NEAR(reduction_step(states[i].value), next, 1e-10);
  }
}

TEST(ReductionStep, BothBranches) {
  EXPECT_DOUBLE_EQ(reduction_step(2.5), 1.5);
  EXPECT_DOUBLE_EQ(reduction_step(0.5), 1.0);
}
