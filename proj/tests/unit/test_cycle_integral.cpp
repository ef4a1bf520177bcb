#include "markovj/cycle_integral.hpp"

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

using namespace markovj;

namespace {

using boost::multiprecision::cpp_bin_float_50;

double log_eps_oracle(const BigInt& c) {
  const cpp_bin_float_50 x(c);
  return static_cast<double>(log((3 * x + sqrt(9 * x * x - 4)) / 2));
}

// Composite Simpson over the arc with the kernel summed in std::complex,
// independent of the adaptive rule and the real-arithmetic kernel.
std::complex<double> simpson_J(const std::vector<double>& values, const std::vector<double>& conj,
                               const JSeries& series, int panels) {
  const double a = std::numbers::pi / 3.0;
  const double b = 2.0 * std::numbers::pi / 3.0;
  const double h = (b - a) / panels;
  std::complex<double> sum = 0.0;
  for (int k = 0; k <= panels; ++k) {
    const double t = a + k * h;
    const std::complex<double> z = std::polar(1.0, t);
    std::complex<double> kernel = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) kernel += 1.0 / (z - values[i]) - 1.0 / (z - conj[i]);
    const std::complex<double> f = series(z) * std::complex<double>(0.0, 1.0) * z * kernel;
    const double w = (k == 0 || k == panels) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    sum += w * f;
  }
  return sum * h / 3.0;
}

}  // namespace

TEST(LogEpsilon, MatchesHighPrecisionOracle) {
  for (const char* c : {"1", "2", "5", "13", "29", "433", "1311738121",
                        "9319409019273930624339009587329345946497", "123456789123456789123456789123456789"
                        "123456789123456789123456789123456789123456789"}) {
    const BigInt x(c);
    const double oracle = log_eps_oracle(x);
    EXPECT_NEAR(log_epsilon(x), oracle, 2e-16 * std::max(1.0, oracle)) << c;
  }
  EXPECT_THROW(log_epsilon(0), std::domain_error);
}

TEST(KernelSum, MatchesComplexDirectSum) {
  const auto states = cycle_states(parse_period("2,4,2,3,4"));
  for (double t : {1.1, 1.5, 2.0}) {
    const std::complex<double> z = std::polar(1.0, t);
    std::complex<double> direct = 0.0;
    for (const auto& s : states) direct += 1.0 / (z - s.value) - 1.0 / (z - s.conj_value);
    EXPECT_NEAR(std::abs(kernel_sum(states, t) - direct), 0.0, 1e-13);
  }
}

TEST(IntegrateJ, PeriodThreeMatchesSimpsonOracle) {
  // Period (3): X = (3 + sqrt 5)/2 with conjugate (3 - sqrt 5)/2; states
  // a0 - 1/X for a0 = 2, 1 and conjugates a0 - 1/X'.
  const double x = (3.0 + std::sqrt(5.0)) / 2.0;
  const double xc = (3.0 - std::sqrt(5.0)) / 2.0;
  const std::vector<double> values{2.0 - 1.0 / x, 1.0 - 1.0 / x};
  const std::vector<double> conj{2.0 - 1.0 / xc, 1.0 - 1.0 / xc};
  const JSeries series = j_coefficients(40);
  const auto oracle = simpson_J(values, conj, series, 20000);

  const TreeNode tip = node_at_path(kLeftTipPath);
  const CycleValue v = integrate_J(tip, series);
  EXPECT_NEAR(std::abs(v.J - oracle), 0.0, 1e-8);
  EXPECT_NEAR(v.J_over_q.real(), 1359.56741044, 5e-9);
  EXPECT_NEAR(v.j.real(), 706.324813541, 5e-9);
}

TEST(IntegrateJ, RootMatchesSimpsonOracle) {
  const TreeNode root = node_at_path("");
  const auto states = cycle_states(root.period.reversed());
  std::vector<double> values, conj;
  for (const auto& s : states) {
    values.push_back(s.value);
    conj.push_back(s.conj_value);
  }
  const JSeries series = j_coefficients(40);
  const CycleValue v = integrate_J(root, series);
  EXPECT_NEAR(std::abs(v.J - simpson_J(values, conj, series, 20000)), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(v.j - v.J / (2.0 * v.log_eps)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(v.J_over_q - v.J / 3.0), 0.0, 1e-12);
  EXPECT_LE(v.quad_error, 1e-10 * 3.0);
}

TEST(IntegrateJ, ReversingThePeriodConjugatesJ) {
  const JSeries series = j_coefficients(40);
  const Period p = parse_period("2,4,2,3,4");
  const auto forward = integrate_cycle(cycle_states(p), series, 1e-11).value;
  const auto backward = integrate_cycle(cycle_states(p.reversed()), series, 1e-11).value;
  EXPECT_NEAR(std::abs(forward - std::conj(backward)), 0.0, 1e-8);
  EXPECT_GT(std::abs(forward.imag()), 1e-3);
}

TEST(IntegrateJ, ImaginaryPartIsNonPositiveOnSmallTree) {
  const JSeries series = j_coefficients(40);
  const MarkovTree tree(5);
  for (const auto& n : tree.nodes()) {
    const auto v = integrate_J(n, series);
    EXPECT_LE(v.J.imag(), 1e-9) << n.path;
  }
}

TEST(IntegrateJ, RejectsNonPositiveTolerance) {
  const JSeries series = j_coefficients(20);
  EXPECT_THROW(integrate_J(node_at_path(""), series, 0.0), std::invalid_argument);
}

TEST(AverageIntegral, ArcAverage) {
  const JSeries series = j_coefficients(40);
  const auto avg = average_integral(series);
  EXPECT_NEAR(avg.real(), 753.982, 1e-3);
  EXPECT_NEAR(avg.imag(), 0.0, 1e-9);

  // Independent check with a fixed Simpson rule.
  const double a = std::numbers::pi / 3.0, b = 2.0 * std::numbers::pi / 3.0;
  const int n = 20000;
  const double h = (b - a) / n;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    sum += w * series(std::polar(1.0, a + k * h)).real();
  }
  EXPECT_NEAR(avg.real(), sum * h / 3.0, 1e-8);
}
