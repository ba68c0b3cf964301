#pragma once

// Exact arithmetic base: arbitrary-precision integers/rationals and the
// small numeric helpers shared by the counting and volume code.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tpvol {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt binomial_exact(long long p, long long q) {
  if (q < 0 || q > p) return 0;
  if (q > p - q) q = p - q;
  BigInt result = 1;
  for (long long i = 0; i < q; ++i) {
    result *= BigInt(p - i);
    result /= BigInt(i + 1);  // exact at every step
  }
  return result;
}

inline BigInt factorial_exact(long long k) {
  BigInt result = 1;
  for (long long i = 2; i <= k; ++i) result *= BigInt(i);
  return result;
}

// Natural log of a positive big integer, good to ~1e-15 relative error.
inline double log_big(const BigInt& v) {
  if (v <= 0) throw std::domain_error("log of a non-positive integer");
  const unsigned bits = boost::multiprecision::msb(v);
  if (bits <= 52) return std::log(v.convert_to<double>());
  const unsigned shift = bits - 52;
  const BigInt top = v >> shift;
  return std::log(top.convert_to<double>()) + shift * 0.6931471805599453094;
}

inline double log_rational(const Rational& v) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (v <= 0) throw std::domain_error("log of a non-positive rational");
  return log_big(numerator(v)) - log_big(denominator(v));
}

// Accepts "p", "p/q", and plain decimals like "12.34"; exact result.
inline Rational parse_rational(const std::string& text) {
  const auto fail = [&]() -> Rational {
    throw std::invalid_argument("cannot parse rational: '" + text + "'");
  };
  std::string body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
    negative = body[0] == '-';
    body.erase(0, 1);
  }
  if (body.empty()) return fail();
  const auto all_digits = [](const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  Rational value;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    const std::string num = body.substr(0, slash);
    const std::string den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return fail();
    BigInt d(den);
    if (d == 0) return fail();
    value = Rational(BigInt(num), d);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    const std::string whole = body.substr(0, dot);
    const std::string frac = body.substr(dot + 1);
    if (!frac.empty() && !all_digits(frac)) return fail();
    if (!whole.empty() && !all_digits(whole)) return fail();
    if (whole.empty() && frac.empty()) return fail();
    BigInt scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const BigInt w = whole.empty() ? BigInt(0) : BigInt(whole);
    const BigInt f = frac.empty() ? BigInt(0) : BigInt(frac);
    value = Rational(w * scale + f, scale);
  } else {
    if (!all_digits(body)) return fail();
    value = Rational(BigInt(body));
  }
  return negative ? -value : value;
}

inline std::string rational_to_string(const Rational& v) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  std::string s = numerator(v).str();
  if (denominator(v) != 1) s += "/" + denominator(v).str();
  return s;
}

}  // namespace tpvol
