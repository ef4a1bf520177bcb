#pragma once

#include "markovj/bigint.hpp"

#include <complex>
#include <filesystem>
#include <vector>

namespace markovj {

/// Truncated q-expansion j(z) = sum_{m=-1}^{M} c_m q^m, q = e^{2 pi i z}.
class JSeries {
 public:
  JSeries(int order, std::vector<BigInt> coefficients);

  int order() const noexcept { return order_; }
  /// c_m for -1 <= m <= order().
  const BigInt& coefficient(int m) const { return exact_.at(static_cast<std::size_t>(m + 1)); }
  const std::vector<BigInt>& coefficients() const noexcept { return exact_; }

  /// Horner evaluation without domain checks.
  std::complex<double> operator()(std::complex<double> z) const;

 private:
  int order_;
  std::vector<BigInt> exact_;
  std::vector<double> approx_;
};

inline constexpr int kDefaultSeriesOrder = 40;

/// Exact coefficients of E4^3 / Delta through q^order, with
/// E4 = 1 + 240 sum sigma_3(n) q^n and Delta = q prod (1 - q^n)^24.
JSeries j_coefficients(int order = kDefaultSeriesOrder);

/// j(z) for Im z >= sqrt(3)/2 - 1e-9; throws std::domain_error below that strip.
std::complex<double> j_eval(std::complex<double> z, const JSeries& series);

/// Upper bound on |sum_{m>order} c_m e^{2 pi i m z}| for Im z >= y, from the
/// envelope c_m <= exp(4 pi sqrt(m)).
double truncation_error_bound(int order, double y);

/// Coefficient cache: first line M, then c_{-1} ... c_M one per line.
void save_series(const JSeries& series, const std::filesystem::path& file);
/// Throws std::runtime_error on a malformed or inconsistent file.
JSeries load_series(const std::filesystem::path& file);
/// Loads `file` if it holds at least `order` terms, otherwise computes and
/// writes it.
JSeries load_or_compute_series(const std::filesystem::path& file, int order);

}  // namespace markovj
