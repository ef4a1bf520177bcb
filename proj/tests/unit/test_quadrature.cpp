#include "markovj/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace markovj;

TEST(Quadrature, KronrodRuleIsExactForDegree22) {
  // One panel of the 15-point rule integrates x^k exactly up to k = 22.
  for (int k = 0; k <= 22; ++k) {
    auto f = [k](double x) { return std::complex<double>(std::pow(x, k), 0.0); };
    const auto panel = detail::gauss_kronrod_15(f, -1.0, 1.0);
    const double exact = k % 2 == 0 ? 2.0 / (k + 1) : 0.0;
    EXPECT_NEAR(panel.value.real(), exact, 1e-14) << "k=" << k;
  }
}

TEST(Quadrature, ComplexExponential) {
  auto f = [](double t) { return std::exp(std::complex<double>(0.0, 5.0 * t)); };
  const auto r = integrate_adaptive(f, 0.0, 2.0, {1e-13, 0.0, 1000});
  const std::complex<double> exact = (std::exp(std::complex<double>(0.0, 10.0)) - 1.0) /
                                     std::complex<double>(0.0, 5.0);
  EXPECT_NEAR(std::abs(r.value - exact), 0.0, 1e-12);
  EXPECT_LE(r.error, 1e-13);
  EXPECT_GE(r.evaluations, 15);
}

TEST(Quadrature, PeakedIntegrandNeedsManyPanels) {
  // Lorentzian of width 1e-3 centred in the interval: integral = 2 atan(1/eps)/eps... scaled.
  const double eps = 1e-3;
  auto f = [eps](double x) { return std::complex<double>(eps / (x * x + eps * eps), 0.0); };
  const auto r = integrate_adaptive(f, -1.0, 1.0, {1e-10, 0.0, 4096});
  EXPECT_NEAR(r.value.real(), 2.0 * std::atan(1.0 / eps), 1e-9);
  EXPECT_GT(r.panels, 5);
}

TEST(Quadrature, RelativeTolerance) {
  auto f = [](double x) { return std::complex<double>(1e6 * std::exp(x), 0.0); };
  const auto r = integrate_adaptive(f, 0.0, 1.0, {0.0, 1e-12, 100});
  EXPECT_NEAR(r.value.real(), 1e6 * (std::numbers::e - 1.0), 1e-5);
}

TEST(Quadrature, ThrowsWithPartialResultWhenPanelsRunOut) {
  auto f = [](double x) { return std::complex<double>(1.0 / std::sqrt(std::abs(x - 0.3) + 1e-14), 0.0); };
  try {
    integrate_adaptive(f, 0.0, 1.0, {1e-15, 0.0, 8});
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError& e) {
    EXPECT_EQ(e.partial().panels, 8);
    EXPECT_GT(e.partial().error, 1e-15);
  }
}

TEST(Quadrature, RejectsZeroTolerance) {
  auto f = [](double) { return std::complex<double>(1.0, 0.0); };
  EXPECT_THROW(integrate_adaptive(f, 0.0, 1.0, {0.0, 0.0, 10}), std::invalid_argument);
}
