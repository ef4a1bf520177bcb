#include "markovj/cycle_integral.hpp"
#include "markovj/markov_tree.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <string>

using namespace markovj;

TEST(Property, MarkovEquationAndPeriodInvariantsAtEveryDepth) {
  for (int depth = 1; depth <= 11; ++depth) {
    const MarkovTree tree(depth);
    for (const auto& n : tree.nodes()) {
      ASSERT_TRUE(satisfies_markov_equation(n.triple)) << n.path;
      ASSERT_EQ(n.period.size(), n.farey.q) << n.path;
      ASSERT_EQ(static_cast<std::uint64_t>(n.period.digit_sum()), 3 * n.farey.q) << n.path;
      ASSERT_EQ(period_matrix(n.period).trace(), 3 * n.c()) << n.path;
      ASSERT_EQ(cycle_states(n.period).size(), 2 * n.farey.q) << n.path;
    }
  }
}

TEST(Property, RandomFractionsRoundTripThroughTheTree) {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint64_t q = std::uniform_int_distribution<std::uint64_t>(2, 400)(rng);
    const std::uint64_t p = std::uniform_int_distribution<std::uint64_t>(1, q / 2)(rng);
    if (std::gcd(p, q) != 1) continue;
    const FareyFraction f{p, q};
    const TreeNode n = node_at_path(path_of_fraction(f));
    ASSERT_EQ(n.farey, f);
    ASSERT_EQ(n.triple, markov_triple_of(f));
    ASSERT_EQ(n.period.size(), q);
    ASSERT_EQ(parse_fraction(format_fraction(f)), f);
  }
}

TEST(Property, PeriodTextRoundTrip) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> digit(2, 4);
  std::uniform_int_distribution<int> length(1, 40);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<int> d(static_cast<std::size_t>(length(rng)));
    for (int& x : d) x = digit(rng);
    const Period p(d);
    const Period plain = parse_period(format_period(p));
    const Period runs = parse_period(format_period_runs(p));
    ASSERT_EQ(std::vector<int>(plain.digits().begin(), plain.digits().end()), d);
    ASSERT_EQ(std::vector<int>(runs.digits().begin(), runs.digits().end()), d);
  }
}

TEST(Property, CycleIntegralIsRotationInvariant) {
  const JSeries series = j_coefficients(40);
  std::mt19937_64 rng(7);
  const MarkovTree tree(6);
  for (const auto& n : tree.nodes()) {
    const Period p = n.period.reversed();
    const auto k = std::uniform_int_distribution<std::size_t>(0, p.size() - 1)(rng);
    const auto a = integrate_cycle(cycle_states(p), series, 1e-11, 1.0).value;
    const auto b = integrate_cycle(cycle_states(p.rotated(k)), series, 1e-11, 1.0).value;
    ASSERT_NEAR(std::abs(a - b), 0.0, 1e-8 * n.farey.q) << n.path << " rotation " << k;
  }
}

TEST(Property, JOverQStaysInsideTheEnvelope) {
  const JSeries series = j_coefficients(40);
  const MarkovTree tree(7);
  for (const auto& n : tree.nodes()) {
    const auto v = integrate_J(n, series);
    EXPECT_GE(v.J_over_q.real(), 1251.36168 - 1e-3) << n.path;
    EXPECT_LE(v.J_over_q.real(), 1359.5675) << n.path;
    EXPECT_GE(v.J_over_q.imag(), -0.4813 - 5e-5) << n.path;
    EXPECT_LE(v.J_over_q.imag(), 1e-9) << n.path;
  }
}
