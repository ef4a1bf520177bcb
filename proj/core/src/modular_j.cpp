#include "markovj/modular_j.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>

namespace markovj {

namespace {

using Series = std::vector<BigInt>;

constexpr double kArcHeight = 0.8660254037844386;  // sqrt(3)/2
constexpr double kStripSlack = 1e-9;

Series multiply(const Series& x, const Series& y, std::size_t len) {
  Series out(len, 0);
  for (std::size_t i = 0; i < x.size() && i < len; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size() && i + j < len; ++j) {
      out[i + j] += x[i] * y[j];
    }
  }
  return out;
}

// prod_{n>=1} (1 - q^n) through q^(len-1) by Euler's pentagonal theorem.
Series euler_product(std::size_t len) {
  Series out(len, 0);
  out[0] = 1;
  for (long k = 1;; ++k) {
    const long g1 = k * (3 * k - 1) / 2;
    const long g2 = k * (3 * k + 1) / 2;
    if (static_cast<std::size_t>(g1) >= len) break;
    const int sign = (k % 2 == 0) ? 1 : -1;
    out[static_cast<std::size_t>(g1)] += sign;
    if (static_cast<std::size_t>(g2) < len) out[static_cast<std::size_t>(g2)] += sign;
  }
  return out;
}

BigInt sigma3(long n) {
  BigInt s = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    const long e = n / d;
    s += BigInt(d) * d * d;
    if (e != d) s += BigInt(e) * e * e;
  }
  return s;
}

}  // namespace

JSeries::JSeries(int order, std::vector<BigInt> coefficients)
    : order_(order), exact_(std::move(coefficients)) {
  if (order_ < 0 || exact_.size() != static_cast<std::size_t>(order_) + 2) {
    throw std::invalid_argument("JSeries: coefficient count does not match order");
  }
  if (exact_[0] != 1 || exact_[1] != 744) {
    throw std::invalid_argument("JSeries: leading coefficients must be 1, 744");
  }
  for (std::size_t i = 2; i < exact_.size(); ++i) {
    if (exact_[i] <= 0) {
      throw std::invalid_argument("JSeries: coefficients c_m, m >= 1, must be positive");
    }
  }
  approx_.reserve(exact_.size());
  for (const auto& c : exact_) approx_.push_back(c.convert_to<double>());
}

std::complex<double> JSeries::operator()(std::complex<double> z) const {
  const std::complex<double> q = std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi) * z);
  std::complex<double> acc = 0.0;
  for (auto it = approx_.rbegin(); it != approx_.rend(); ++it) {
    acc = acc * q + *it;
  }
  return acc / q;
}

JSeries j_coefficients(int order) {
  if (order < 0) {
    throw std::invalid_argument("j_coefficients: order must be >= 0");
  }
  // j * q = E4^3 / prod(1-q^n)^24 through q^(order+1).
  const std::size_t len = static_cast<std::size_t>(order) + 2;

  Series e4(len, 0);
  e4[0] = 1;
  for (std::size_t n = 1; n < len; ++n) e4[n] = 240 * sigma3(static_cast<long>(n));
  const Series e4_cubed = multiply(multiply(e4, e4, len), e4, len);

  const Series p1 = euler_product(len);
  const Series p2 = multiply(p1, p1, len);
  const Series p4 = multiply(p2, p2, len);
  const Series p8 = multiply(p4, p4, len);
  const Series p16 = multiply(p8, p8, len);
  const Series p24 = multiply(p16, p8, len);

  // Long division by a series with constant term 1.
  Series quotient(len, 0);
  for (std::size_t n = 0; n < len; ++n) {
    BigInt acc = e4_cubed[n];
    for (std::size_t k = 1; k <= n; ++k) acc -= p24[k] * quotient[n - k];
    quotient[n] = std::move(acc);
  }
  return JSeries(order, std::move(quotient));
}

std::complex<double> j_eval(std::complex<double> z, const JSeries& series) {
  if (z.imag() < kArcHeight - kStripSlack) {
    throw std::domain_error(fmt::format("j_eval: Im z = {} is below sqrt(3)/2", z.imag()));
  }
  return series(z);
}

double truncation_error_bound(int order, double y) {
  if (order < 0) {
    throw std::invalid_argument("truncation_error_bound: order must be >= 0");
  }
  if (y < kArcHeight - kStripSlack) {
    throw std::domain_error("truncation_error_bound: y is below sqrt(3)/2");
  }
  constexpr double pi = std::numbers::pi;
  // Term envelope exp(f(m)), f(m) = 4 pi sqrt(m) - 2 pi m y, concave in m.
  auto f = [&](double m) { return 4.0 * pi * std::sqrt(m) - 2.0 * pi * m * y; };
  auto slope = [&](double m) { return 2.0 * pi / std::sqrt(m) - 2.0 * pi * y; };

  // Sum terms explicitly until f is decreasing, then bound the rest by a
  // geometric series with ratio exp(f'(m0)) (valid since f' is decreasing).
  double total = 0.0;
  long m = order + 1;
  while (slope(static_cast<double>(m)) >= -1e-3) {
    total += std::exp(f(static_cast<double>(m)));
    ++m;
  }
  const double ratio = std::exp(slope(static_cast<double>(m)));
  total += std::exp(f(static_cast<double>(m))) / (1.0 - ratio);
  return total;
}

void save_series(const JSeries& series, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write series cache " + file.string());
  }
  out << series.order() << '\n';
  for (const auto& c : series.coefficients()) out << c.str() << '\n';
  if (!out) {
    throw std::runtime_error("error writing series cache " + file.string());
  }
}

JSeries load_series(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw std::runtime_error("cannot read series cache " + file.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("series cache is empty: " + file.string());
  }
  int order = 0;
  try {
    order = std::stoi(line);
  } catch (const std::exception&) {
    throw std::runtime_error("series cache has a bad order line: " + file.string());
  }
  std::vector<BigInt> coefficients;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      coefficients.push_back(parse_decimal(line));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(fmt::format("series cache {}: {}", file.string(), e.what()));
    }
  }
  try {
    return JSeries(order, std::move(coefficients));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(fmt::format("series cache {}: {}", file.string(), e.what()));
  }
}

JSeries load_or_compute_series(const std::filesystem::path& file, int order) {
  if (std::filesystem::exists(file)) {
    JSeries cached = load_series(file);
    if (cached.order() == order) return cached;
    if (cached.order() > order) {
      std::vector<BigInt> head(cached.coefficients().begin(),
                               cached.coefficients().begin() + order + 2);
      return JSeries(order, std::move(head));
    }
  }
  JSeries fresh = j_coefficients(order);
  save_series(fresh, file);
  return fresh;
}

}  // namespace markovj
