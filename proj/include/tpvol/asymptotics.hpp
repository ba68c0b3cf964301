#pragma once

// Closed-form asymptotic estimates, evaluated in log space: the count
// estimate for constant margins, its induced proxy for the relative
// volume, the volume estimates, and the density/aspect hypothesis check
// that governs when the count estimate applies.

#include <cmath>
#include <stdexcept>

#include "tpvol/bigint.hpp"
#include "tpvol/ehrhart.hpp"
#include "tpvol/log_real.hpp"
#include "tpvol/margins.hpp"

namespace tpvol {

inline constexpr double kLog2Pi = 1.8378770664093454836;

inline LogReal log_binomial(long long p, long long q) {
  if (q < 0 || q > p) throw std::invalid_argument("binomial requires 0 <= q <= p");
  if (q == 0 || q == p) return LogReal::from_log(0.0);
  const double lg = std::lgamma(static_cast<double>(p) + 1.0) -
                    std::lgamma(static_cast<double>(q) + 1.0) -
                    std::lgamma(static_cast<double>(p - q) + 1.0);
  return LogReal::from_log(lg);
}

// Point estimate of the count of m x n non-negative integer matrices with
// row sums s and column sums t:
//   binom(n+s-1, n-1)^m * binom(m+t-1, m-1)^n / binom(mn+ms-1, mn-1) * e^(1/2)
inline LogReal estimate_count_log(const MarginSpec& spec) {
  if (spec.s() < 1 || spec.t() < 1)
    throw std::invalid_argument("count estimate requires s, t >= 1");
  const long long m = spec.m(), s = spec.s(), n = spec.n(), t = spec.t();
  const long long cells = m * n;
  const long long total = m * s;  // = n*t
  const double lg = static_cast<double>(m) * log_binomial(n + s - 1, n - 1).log() +
                    static_cast<double>(n) * log_binomial(m + t - 1, m - 1).log() -
                    log_binomial(cells + total - 1, cells - 1).log() + 0.5;
  return LogReal::from_log(lg);
}

// Finite-dilation proxy for log(relative volume): the count estimate at
// z = lambda_mult * z0 divided by z^((m-1)(n-1)).
inline LogReal estimate_rel_volume_proxy_log(long long m, long long n, long long lambda_mult) {
  if (lambda_mult < 1) throw std::invalid_argument("lambda_mult must be positive");
  const long long z = lambda_mult * period(m, n);
  const MarginSpec spec(m, z, n, z * m / n);
  const double d = static_cast<double>((m - 1) * (n - 1));
  return LogReal::from_log(estimate_count_log(spec).log() - d * std::log(static_cast<double>(z)));
}

// Volume estimate with the error term dropped:
//   (2pi)^(-(m+n-1)/2) * n^(-(m-1)(n-1)) * exp(1/3 + mn - (m-n)^2/(12mn))
inline LogReal estimate_volume_log(long long m, long long n) {
  if (m < 1 || n < 1) throw std::invalid_argument("matrix dimensions must be positive");
  const double md = static_cast<double>(m), nd = static_cast<double>(n);
  const double lg = -0.5 * (md + nd - 1.0) * kLog2Pi -
                    (md - 1.0) * (nd - 1.0) * std::log(nd) + 1.0 / 3.0 + md * nd -
                    (md - nd) * (md - nd) / (12.0 * md * nd);
  return LogReal::from_log(lg);
}

// The m = n specialization: (2pi)^(-(n-1/2)) * n^(-(n-1)^2) * exp(1/3 + n^2).
inline LogReal estimate_birkhoff_volume_log(long long n) {
  if (n < 1) throw std::invalid_argument("matrix dimensions must be positive");
  const double nd = static_cast<double>(n);
  const double lg = -(nd - 0.5) * kLog2Pi - (nd - 1.0) * (nd - 1.0) * std::log(nd) +
                    1.0 / 3.0 + nd * nd;
  return LogReal::from_log(lg);
}

struct HypReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  double a = 0.0;
  Rational lhs_exact;       // the left side is a rational function of m, n, lambda
  double density_factor = 0.0;  // (1+2l)^2 / (4l(1+l)), >= 1
  double aspect_factor = 0.0;   // 1 + 5m/6n + 5n/6m, >= 1 + 5/3
};

// Checks (1+2l)^2/(4l(1+l)) * (1 + 5m/6n + 5n/6m) <= a log n.
inline HypReport hyp_margin(long long m, long long n, const Rational& lambda, double a) {
  if (m < 1) throw std::invalid_argument("matrix dimensions must be positive");
  if (n < 2) throw std::invalid_argument("hypothesis check requires n >= 2");
  if (lambda <= 0) throw std::invalid_argument("lambda must be positive");
  if (!(a > 0.0)) throw std::invalid_argument("a must be positive");
  const Rational one_plus_2l = 1 + 2 * lambda;
  const Rational density = one_plus_2l * one_plus_2l / (4 * lambda * (1 + lambda));
  const Rational aspect = Rational(1) + Rational(5 * m, 6 * n) + Rational(5 * n, 6 * m);
  HypReport report;
  report.lhs_exact = density * aspect;
  report.lhs = report.lhs_exact.convert_to<double>();
  report.rhs = a * std::log(static_cast<double>(n));
  report.satisfied = report.lhs <= report.rhs;
  report.a = a;
  report.density_factor = density.convert_to<double>();
  report.aspect_factor = aspect.convert_to<double>();
  return report;
}

}  // namespace tpvol
