#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace markovj {

using BigInt = boost::multiprecision::cpp_int;

/// Natural logarithm of a positive big integer. Uses the leading 62 bits and
/// the bit length, so it stays accurate (relative error ~1e-16) far beyond
/// the range of double.
double log_of(const BigInt& x);

/// Quotient num/den as a double, for 0 <= num and den > 0. Correct to double
/// precision irrespective of operand size.
double ratio_of(const BigInt& num, const BigInt& den);

std::string to_decimal(const BigInt& x);

/// Throws std::invalid_argument on anything but an optionally signed run of
/// decimal digits.
BigInt parse_decimal(const std::string& text);

}  // namespace markovj
