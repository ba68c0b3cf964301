#pragma once

// Absolute volumes in exact radical form: rational * m^(a/2) * n^(b/2).
// Converting relative to absolute volume multiplies by half-integer
// powers of the dimensions, which stay exact here instead of collapsing
// to floating point.

#include <optional>
#include <string>

#include "tpvol/bigint.hpp"

namespace tpvol {

struct ScaledVolume {
  Rational coeff = 1;
  long long m = 1, n = 1;
  long long m_exp2 = 0;  // exponent of m is m_exp2/2
  long long n_exp2 = 0;  // exponent of n is n_exp2/2

  // value = coeff * m^(m_exp2/2) * n^(n_exp2/2), always > 0

  Rational squared() const {
    Rational sq = coeff * coeff;
    sq *= pow_rational(m, m_exp2);
    sq *= pow_rational(n, n_exp2);
    return sq;
  }

  // Splits the value as rational_part * sqrt(radicand), radicand squarefree.
  std::pair<Rational, BigInt> normalized() const {
    Rational rat = coeff;
    rat *= pow_rational(m, m_exp2 / 2);
    rat *= pow_rational(n, n_exp2 / 2);
    BigInt radicand = 1;
    if (m_exp2 % 2 != 0) radicand *= m;
    if (n_exp2 % 2 != 0) radicand *= n;
    BigInt square_part = 1;
    for (BigInt p = 2; p * p <= radicand; ++p) {
      while (radicand % (p * p) == 0) {
        radicand /= p * p;
        square_part *= p;
      }
    }
    return {rat * square_part, radicand};
  }

  std::optional<Rational> exact_rational() const {
    auto [rat, radicand] = normalized();
    if (radicand == 1) return rat;
    return std::nullopt;
  }

  double log_value() const {
    auto [rat, radicand] = normalized();
    return log_rational(rat) + 0.5 * log_big(radicand);
  }

  double value() const { return std::exp(log_value()); }

  std::string to_string() const {
    auto [rat, radicand] = normalized();
    std::string s = rational_to_string(rat);
    if (radicand != 1) s += "*sqrt(" + radicand.str() + ")";
    return s;
  }

 private:
  static Rational pow_rational(long long base, long long exp) {
    Rational r = 1;
    for (long long i = 0; i < exp; ++i) r *= base;
    for (long long i = 0; i > exp; --i) r /= base;
    return r;
  }
};

// vol = m^((n-1)/2) * n^((m-1)/2) * nu for m,n >= 2; a single point (m or
// n equal to 1) has both volume notions equal to 1.
inline ScaledVolume absolute_volume(long long m, long long n, const Rational& nu) {
  if (m < 1 || n < 1) throw std::invalid_argument("matrix dimensions must be positive");
  if (nu <= 0) throw std::invalid_argument("relative volume must be positive");
  if (m == 1 || n == 1) return ScaledVolume{Rational(1), m, n, 0, 0};
  return ScaledVolume{nu, m, n, n - 1, m - 1};
}

}  // namespace tpvol
