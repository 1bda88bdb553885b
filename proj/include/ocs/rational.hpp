#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace ocs {

// All probabilities, masses and areas are exact rationals. Doubles appear only
// in empirical estimates and display strings.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "p/q" or "p" with optional sign; the result is normalized with a
// positive denominator. Throws std::invalid_argument on anything else,
// including q = 0.
Rational parse_rational(const std::string& text);

// Canonical form: "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& r);

// "p/q (0.375)": the exact value plus a decimal approximation for humans.
std::string pretty(const Rational& r);

// r rounded half up to `digits` decimal places, computed in integer
// arithmetic, trailing zeros and a trailing dot removed. Platform independent,
// which is what keeps rendered output byte stable.
std::string fixed_decimal(const Rational& r, int digits);

double to_double(const Rational& r);

}  // namespace ocs
