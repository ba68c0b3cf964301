#pragma once

// Margin descriptions of matrix counting problems: prescribed row and
// column sums of an m x n non-negative integer matrix.

#include <numeric>
#include <stdexcept>
#include <vector>

#include "tpvol/bigint.hpp"

namespace tpvol {

class GeneralMargins {
 public:
  GeneralMargins(std::vector<long long> row_sums, std::vector<long long> col_sums)
      : rows_(std::move(row_sums)), cols_(std::move(col_sums)) {
    if (rows_.empty() || cols_.empty())
      throw std::invalid_argument("matrix dimensions must be positive");
    for (long long r : rows_)
      if (r < 0) throw std::invalid_argument("margins must be non-negative");
    for (long long c : cols_)
      if (c < 0) throw std::invalid_argument("margins must be non-negative");
    const long long row_total = std::accumulate(rows_.begin(), rows_.end(), 0LL);
    const long long col_total = std::accumulate(cols_.begin(), cols_.end(), 0LL);
    if (row_total != col_total) throw std::invalid_argument("unbalanced margins");
  }

  const std::vector<long long>& row_sums() const { return rows_; }
  const std::vector<long long>& col_sums() const { return cols_; }
  long long total() const { return std::accumulate(rows_.begin(), rows_.end(), 0LL); }

 private:
  std::vector<long long> rows_;
  std::vector<long long> cols_;
};

// Constant margins: every row sums to s, every column to t, with ms = nt.
class MarginSpec {
 public:
  MarginSpec(long long m, long long s, long long n, long long t)
      : m_(m), s_(s), n_(n), t_(t) {
    if (m < 1 || n < 1) throw std::invalid_argument("matrix dimensions must be positive");
    if (s < 0 || t < 0) throw std::invalid_argument("margins must be non-negative");
    if (m * s != n * t) throw std::invalid_argument("unbalanced margins");
  }

  long long m() const { return m_; }
  long long s() const { return s_; }
  long long n() const { return n_; }
  long long t() const { return t_; }

  // The common cell mean: lambda = s/n = t/m.
  Rational lambda() const { return Rational(s_, n_); }

  MarginSpec transposed() const { return MarginSpec(n_, t_, m_, s_); }

  GeneralMargins to_general() const {
    return GeneralMargins(std::vector<long long>(static_cast<size_t>(m_), s_),
                          std::vector<long long>(static_cast<size_t>(n_), t_));
  }

 private:
  long long m_, s_, n_, t_;
};

}  // namespace tpvol
