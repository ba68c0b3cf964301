#pragma once

// Lattice-point counting function of the transportation polytope and its
// reconstruction as a pseudo-polynomial by exact Newton interpolation on
// the grid z = 0, z0, 2*z0, ...

#include <atomic>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

#include "tpvol/bigint.hpp"
#include "tpvol/counting.hpp"
#include "tpvol/margins.hpp"

namespace tpvol {

// Smallest dilation factor whose dilate contains lattice points.
inline long long period(long long m, long long n) {
  if (m < 1 || n < 1) throw std::invalid_argument("matrix dimensions must be positive");
  return n / std::gcd(m, n);
}

using CountFn = std::function<BigInt(const MarginSpec&)>;

inline CountFn default_counter(const CountOptions& options = {}) {
  return [options](const MarginSpec& spec) { return count_constant_margins(spec, options); };
}

// Lattice points of the z-th dilate: matrices with row sums z and column
// sums zm/n; zero whenever z is not a multiple of the period.
inline BigInt ehrhart_value(long long m, long long n, long long z,
                            const CountOptions& options = {}) {
  if (z < 0) throw std::invalid_argument("dilation factor must be non-negative");
  const long long z0 = period(m, n);
  if (z % z0 != 0) return 0;
  return count_constant_margins(MarginSpec(m, z, n, z * m / n), options);
}

struct EhrhartPolynomial {
  long long m = 0, n = 0;
  long long degree = 0;  // (m-1)(n-1)
  long long z0 = 1;
  std::vector<Rational> coeffs;  // c_0..c_d with H(z) = sum_i c_i z^(d-i)

  Rational eval_polynomial(long long z) const {
    Rational acc = 0;
    for (const Rational& c : coeffs) acc = acc * z + c;
    return acc;
  }

  // The pseudo-polynomial itself: 0 off the period lattice.
  BigInt evaluate(long long z) const {
    if (z % z0 != 0) return 0;
    const Rational v = eval_polynomial(z);
    if (boost::multiprecision::denominator(v) != 1)
      throw std::logic_error("non-integral Ehrhart value");
    return boost::multiprecision::numerator(v);
  }
};

struct EhrhartOptions {
  CountFn counter;  // empty: plain engine without a budget
  int threads = 1;
};

namespace detail {

inline std::vector<BigInt> count_grid(long long m, long long n, long long z0, long long points,
                                      const CountFn& counter, int threads) {
  std::vector<BigInt> counts(static_cast<size_t>(points));
  const auto count_one = [&](long long j) {
    const long long z = j * z0;
    counts[static_cast<size_t>(j)] = counter(MarginSpec(m, z, n, z * m / n));
  };
  if (threads <= 1 || points <= 1) {
    for (long long j = 0; j < points; ++j) count_one(j);
    return counts;
  }
  std::atomic<long long> next{0};
  std::vector<std::exception_ptr> errors(static_cast<size_t>(points));
  std::vector<std::thread> pool;
  const int workers = static_cast<int>(std::min<long long>(threads, points));
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const long long j = next.fetch_add(1);
        if (j >= points) return;
        try {
          count_one(j);
        } catch (...) {
          errors[static_cast<size_t>(j)] = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  return counts;
}

}  // namespace detail

// Counts H at z = 0, z0, ..., d*z0 and interpolates the unique polynomial
// of degree <= d through them, exactly, via forward differences.
inline EhrhartPolynomial interpolate_ehrhart(long long m, long long n,
                                             const EhrhartOptions& options = {}) {
  const long long z0 = period(m, n);
  const long long d = (m - 1) * (n - 1);
  const CountFn counter = options.counter ? options.counter : default_counter();
  const std::vector<BigInt> counts =
      detail::count_grid(m, n, z0, d + 1, counter, options.threads);

  std::vector<Rational> diffs(counts.begin(), counts.end());
  for (long long k = 1; k <= d; ++k)
    for (long long j = d; j >= k; --j) diffs[static_cast<size_t>(j)] -= diffs[static_cast<size_t>(j - 1)];

  // Accumulate sum_k diffs[k] * C(z/z0, k) as monomial coefficients in z.
  std::vector<Rational> ascending(static_cast<size_t>(d) + 1, Rational(0));
  std::vector<Rational> basis{Rational(1)};  // C(z/z0, 0)
  ascending[0] += diffs[0];
  for (long long k = 1; k <= d; ++k) {
    std::vector<Rational> next(static_cast<size_t>(k) + 1, Rational(0));
    for (long long i = 0; i <= k; ++i) {
      Rational c = 0;
      if (i > 0) c += basis[static_cast<size_t>(i - 1)] / z0;
      if (i < k) c -= basis[static_cast<size_t>(i)] * (k - 1);
      next[static_cast<size_t>(i)] = c / k;
    }
    basis = std::move(next);
    for (long long i = 0; i <= k; ++i) ascending[static_cast<size_t>(i)] += diffs[static_cast<size_t>(k)] * basis[static_cast<size_t>(i)];
  }

  EhrhartPolynomial poly;
  poly.m = m;
  poly.n = n;
  poly.degree = d;
  poly.z0 = z0;
  poly.coeffs.assign(ascending.rbegin(), ascending.rend());

  for (long long j = 0; j <= d; ++j)
    if (poly.evaluate(j * z0) != counts[static_cast<size_t>(j)])
      throw std::logic_error("interpolation failed to reproduce a grid point");
  return poly;
}

// Held-out validation: compare the polynomial at the first grid point
// beyond the interpolation window against a fresh count.
inline bool verify_polynomial(const EhrhartPolynomial& poly, const CountFn& counter = {}) {
  const CountFn count = counter ? counter : default_counter();
  const long long z = (poly.degree + 1) * poly.z0;
  const BigInt fresh = count(MarginSpec(poly.m, z, poly.n, z * poly.m / poly.n));
  return poly.evaluate(z) == fresh;
}

// Leading coefficient c0: the volume in units of lattice basic cells.
inline Rational relative_volume(const EhrhartPolynomial& poly) {
  return poly.coeffs.front();
}

}  // namespace tpvol
