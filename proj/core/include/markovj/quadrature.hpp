#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace markovj {

struct QuadratureResult {
  std::complex<double> value;
  double error = 0.0;
  int panels = 0;
  int evaluations = 0;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const QuadratureResult& partial() const noexcept { return partial_; }

 private:
  QuadratureResult partial_;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_panels = 4096;
};

namespace detail {

// 15-point Kronrod abscissae (non-negative half) and weights, with the
// embedded 7-point Gauss weights on the odd-indexed abscissae.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  std::complex<double> value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gauss_kronrod_15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const std::complex<double> fc = f(center);
  std::complex<double> kronrod = kWgk[7] * fc;
  std::complex<double> gauss = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const std::complex<double> sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of a complex-valued
/// integrand: the panel with the largest |K15 - G7| is bisected until the sum
/// of panel errors drops below max(abs_tol, rel_tol * |I|). Panels are always
/// bisected, so the evaluation points are deterministic for a given input.
/// Throws QuadratureError (carrying the achieved estimate) when max_panels is
/// exhausted.
template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b,
                                    const QuadratureOptions& opts = {}) {
  if (!(opts.abs_tol > 0.0) && !(opts.rel_tol > 0.0)) {
    throw std::invalid_argument("integrate_adaptive: need a positive tolerance");
  }
  std::priority_queue<detail::Panel> heap;
  heap.push(detail::gauss_kronrod_15(f, a, b));
  int evaluations = 15;
  std::complex<double> total = heap.top().value;
  double error = heap.top().error;

  auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };

  while (error > target()) {
    if (static_cast<int>(heap.size()) >= opts.max_panels) {
      throw QuadratureError("adaptive quadrature did not reach tolerance",
                            {total, error, static_cast<int>(heap.size()), evaluations});
    }
    const detail::Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const detail::Panel left = detail::gauss_kronrod_15(f, worst.a, mid);
    const detail::Panel right = detail::gauss_kronrod_15(f, mid, worst.b);
    evaluations += 30;
    heap.push(left);
    heap.push(right);

    // Re-sum instead of updating incrementally so roundoff does not drift.
    total = 0.0;
    error = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      total += copy.top().value;
      error += copy.top().error;
      copy.pop();
    }
  }
  return {total, error, static_cast<int>(heap.size()), evaluations};
}

}  // namespace markovj
