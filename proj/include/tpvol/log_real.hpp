#pragma once

// A positive real stored as its natural logarithm.  Counts and volumes
// here span hundreds of orders of magnitude, so the raw value is never
// materialized unless explicitly requested.

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace tpvol {

class LogReal {
 public:
  LogReal() = default;

  static LogReal from_log(double log_value) {
    if (!std::isfinite(log_value)) throw std::domain_error("LogReal must be finite");
    LogReal r;
    r.log_ = log_value;
    return r;
  }

  static LogReal from_value(double value) {
    if (!(value > 0.0) || !std::isfinite(value))
      throw std::domain_error("LogReal requires a positive finite value");
    return from_log(std::log(value));
  }

  double log() const { return log_; }
  double log10() const { return log_ / 2.302585092994045684; }
  double value() const { return std::exp(log_); }

  LogReal operator*(const LogReal& other) const { return from_log(log_ + other.log_); }
  LogReal operator/(const LogReal& other) const { return from_log(log_ - other.log_); }
  LogReal pow(double exponent) const { return from_log(log_ * exponent); }

  // "1.234568e+42" with the requested number of significant digits.
  std::string to_scientific(int digits = 6) const {
    if (digits < 1) digits = 1;
    double exponent = std::floor(log10());
    double mantissa = std::pow(10.0, log10() - exponent);
    char mbuf[64];
    std::snprintf(mbuf, sizeof mbuf, "%.*f", digits - 1, mantissa);
    if (mbuf[0] == '1' && mbuf[1] == '0') {  // rounding pushed mantissa to 10
      exponent += 1;
      mantissa = 1.0;
      std::snprintf(mbuf, sizeof mbuf, "%.*f", digits - 1, mantissa);
    }
    char out[96];
    std::snprintf(out, sizeof out, "%se%+03lld", mbuf, static_cast<long long>(exponent));
    return out;
  }

 private:
  double log_ = 0.0;
};

}  // namespace tpvol
