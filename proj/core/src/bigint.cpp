#include "markovj/bigint.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace markovj {

namespace {

// Leading bits of a positive integer as (mantissa, shift) with x ~ mantissa * 2^shift.
std::pair<double, long> split_leading(const BigInt& x) {
  const long bits = static_cast<long>(boost::multiprecision::msb(x)) + 1;
  const long shift = bits > 62 ? bits - 62 : 0;
  const BigInt top = x >> shift;
  return {static_cast<double>(top.convert_to<std::uint64_t>()), shift};
}

}  // namespace

double log_of(const BigInt& x) {
  if (x <= 0) {
    throw std::domain_error("log_of: argument must be positive");
  }
  const auto [mantissa, shift] = split_leading(x);
  return std::log(mantissa) + static_cast<double>(shift) * std::log(2.0);
}

double ratio_of(const BigInt& num, const BigInt& den) {
  if (den <= 0) {
    throw std::domain_error("ratio_of: denominator must be positive");
  }
  if (num == 0) {
    return 0.0;
  }
  if (num < 0) {
    return -ratio_of(-num, den);
  }
  const auto [mn, sn] = split_leading(num);
  const auto [md, sd] = split_leading(den);
  return std::ldexp(mn / md, static_cast<int>(sn - sd));
}

std::string to_decimal(const BigInt& x) { return x.str(); }

BigInt parse_decimal(const std::string& text) {
  std::size_t start = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    start = 1;
  }
  if (start == text.size()) {
    throw std::invalid_argument("not a decimal integer: '" + text + "'");
  }
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw std::invalid_argument("not a decimal integer: '" + text + "'");
    }
  }
  return BigInt(text);
}

}  // namespace markovj
