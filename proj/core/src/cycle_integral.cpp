#include "markovj/cycle_integral.hpp"

#include "markovj/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace markovj {

namespace {

constexpr double kThetaLo = std::numbers::pi / 3.0;
constexpr double kThetaHi = 2.0 * std::numbers::pi / 3.0;

}  // namespace

double log_epsilon(const BigInt& c) {
  if (c < 1) {
    throw std::domain_error("log_epsilon: c must be positive");
  }
  // log(3c) + log((1 + sqrt(1 - t))/2), t = 4/(9c^2), the second term written
  // as log1p(-t / (2 (1 + sqrt(1 - t)))) to keep it accurate for large c.
  const double log_c = log_of(c);
  const double t = (4.0 / 9.0) * std::exp(-2.0 * log_c);
  const double root = std::sqrt(1.0 - t);
  return std::log(3.0) + log_c + std::log1p(-t / (2.0 * (1.0 + root)));
}

std::complex<double> kernel_sum(std::span<const CycleState> states, double theta) {
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  const double sn2 = sn * sn;
  // 1/(z - x) = (cos - x - i sin) / ((cos - x)^2 + sin^2) for real x.
  double re = 0.0;
  double inv_sum = 0.0;
  for (const auto& s : states) {
    const double dw = cs - s.value;
    const double dc = cs - s.conj_value;
    const double nw = 1.0 / (dw * dw + sn2);
    const double nc = 1.0 / (dc * dc + sn2);
    re += dw * nw - dc * nc;
    inv_sum += nw - nc;
  }
  return {re, -sn * inv_sum};
}

QuadratureResult integrate_cycle(std::span<const CycleState> states, const JSeries& series,
                                 double tol, double scale) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("integrate_cycle: tol must be positive");
  }
  auto integrand = [&](double theta) {
    const std::complex<double> z = std::polar(1.0, theta);
    return series(z) * std::complex<double>(0.0, 1.0) * z * kernel_sum(states, theta);
  };
  QuadratureOptions opts;
  opts.abs_tol = tol * scale;
  return integrate_adaptive(integrand, kThetaLo, kThetaHi, opts);
}

CycleValue integrate_J(const TreeNode& node, const JSeries& series, double tol) {
  const auto states = cycle_states(node.period.reversed());
  const double q = static_cast<double>(node.farey.q);
  const QuadratureResult r = integrate_cycle(states, series, tol, q);

  CycleValue v;
  v.path = node.path;
  v.level = node.level;
  v.farey = node.farey;
  v.c = node.c();
  v.J = r.value;
  v.log_eps = log_epsilon(node.c());
  v.j = v.J / (2.0 * v.log_eps);
  v.J_over_q = v.J / q;
  v.quad_error = r.error;
  return v;
}

std::complex<double> average_integral(const JSeries& series) {
  auto integrand = [&](double theta) { return series(std::polar(1.0, theta)); };
  QuadratureOptions opts;
  opts.abs_tol = 1e-10;
  return integrate_adaptive(integrand, kThetaLo, kThetaHi, opts).value;
}

}  // namespace markovj
