#include "ocs/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace ocs {

namespace {

bool is_integer_literal(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

// cpp_int's string constructor rejects a leading '+'
BigInt parse_bigint(const std::string& s) {
  return s.front() == '+' ? BigInt(s.substr(1)) : BigInt(s);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_literal(text)) {
      throw std::invalid_argument("not a rational: '" + text + "'");
    }
    return Rational(parse_bigint(text));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den)) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
  BigInt n = parse_bigint(num);
  BigInt d = parse_bigint(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  return Rational(n, d);
}

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string pretty(const Rational& r) {
  std::ostringstream os;
  os << to_string(r) << " (" << to_double(r) << ")";
  return os.str();
}

std::string fixed_decimal(const Rational& r, int digits) {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // round(|r| * scale) half up, then reassemble sign and decimal point
  const bool neg = r < 0;
  const Rational mag = neg ? Rational(-r) : r;
  const BigInt scaled =
      BigInt((boost::multiprecision::numerator(mag) * scale * 2 +
              boost::multiprecision::denominator(mag)) /
             (boost::multiprecision::denominator(mag) * 2));
  std::string s = scaled.str();
  if (static_cast<int>(s.size()) <= digits) {
    s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  }
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s.empty()) s = "0";
  if (neg && s != "0") s.insert(0, "-");
  return s;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace ocs
