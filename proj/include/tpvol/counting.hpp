#pragma once

// Exact enumeration of non-negative integer matrices with prescribed
// margins.  The engine walks the matrix column by column; the state is
// the multiset of remaining row sums, kept as a descending-sorted
// vector so that symmetric states collapse in the memo table.  Column
// transitions allocate the column sum to runs of equal remaining values
// as a non-increasing sequence per run, then multiply by the number of
// distinct orderings.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "tpvol/bigint.hpp"
#include "tpvol/margins.hpp"

namespace tpvol {

struct CountOptions {
  double time_budget_seconds = 0.0;  // 0 disables the budget
};

class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OracleBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

struct MemoKey {
  uint32_t col = 0;
  std::vector<int64_t> remaining;
  bool operator==(const MemoKey&) const = default;
};

struct MemoKeyHash {
  size_t operator()(const MemoKey& key) const {
    uint64_t h = 1469598103934665603ull ^ key.col;
    for (int64_t v : key.remaining) {
      h ^= static_cast<uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

class MarginCounter {
 public:
  MarginCounter(const std::vector<long long>& rows, const std::vector<long long>& cols,
                const CountOptions& options)
      : cols_(cols.begin(), cols.end()) {
    root_.assign(rows.begin(), rows.end());
    std::sort(root_.begin(), root_.end(), std::greater<>());
    factorials_.resize(root_.size() + 1);
    factorials_[0] = 1;
    for (size_t i = 1; i < factorials_.size(); ++i) factorials_[i] = factorials_[i - 1] * BigInt(i);
    if (options.time_budget_seconds > 0.0) {
      has_deadline_ = true;
      deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(options.time_budget_seconds));
    }
  }

  BigInt run() {
    check_deadline();
    return solve(root_, 0);
  }

 private:
  using Clock = std::chrono::steady_clock;

  struct Group {
    int64_t value = 0;
    int begin = 0;
    int size = 0;
  };

  struct Level {
    const std::vector<int64_t>* remaining = nullptr;
    uint32_t col = 0;
    std::vector<Group> groups;
    std::vector<int64_t> suffix_cap;  // total allocatable to groups >= g
    std::vector<int64_t> amounts;
    std::vector<int64_t> child;
    BigInt total;
  };

  void check_deadline() {
    if (has_deadline_ && Clock::now() > deadline_)
      throw BudgetExceededError("time budget exceeded");
  }

  void tick() {
    if (has_deadline_ && (++ticks_ & 1023u) == 0) check_deadline();
  }

  const BigInt& solve(const std::vector<int64_t>& remaining, uint32_t col) {
    static const BigInt kOne(1);
    const size_t ncols = cols_.size();
    if (col + 1 >= ncols) return kOne;  // final column forced by balance
    tick();
    MemoKey key{col, remaining};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    BigInt result = (col + 2 == ncols) ? forced_pair_count(remaining, cols_[col])
                                       : expand_column(remaining, col);
    return memo_.emplace(std::move(key), std::move(result)).first->second;
  }

  // Two columns left: pick the first column a with 0 <= a_i <= remaining_i
  // summing to t1; the last column is then forced.
  BigInt forced_pair_count(const std::vector<int64_t>& remaining, int64_t t1) {
    std::vector<BigInt> dp(static_cast<size_t>(t1) + 1);
    std::vector<BigInt> prefix(dp.size() + 1);
    dp[0] = 1;
    for (int64_t r : remaining) {
      prefix[0] = 0;
      for (size_t j = 0; j < dp.size(); ++j) prefix[j + 1] = prefix[j] + dp[j];
      for (size_t j = 0; j < dp.size(); ++j) {
        const size_t lo = r >= static_cast<int64_t>(j) ? 0 : j - static_cast<size_t>(r);
        dp[j] = prefix[j + 1] - prefix[lo];
      }
    }
    return dp.back();
  }

  BigInt expand_column(const std::vector<int64_t>& remaining, uint32_t col) {
    Level lv;
    lv.remaining = &remaining;
    lv.col = col;
    const size_t m = remaining.size();
    for (size_t i = 0; i < m;) {
      size_t j = i;
      while (j < m && remaining[j] == remaining[i]) ++j;
      lv.groups.push_back({remaining[i], static_cast<int>(i), static_cast<int>(j - i)});
      i = j;
    }
    lv.suffix_cap.assign(lv.groups.size() + 1, 0);
    for (size_t g = lv.groups.size(); g-- > 0;)
      lv.suffix_cap[g] = lv.suffix_cap[g + 1] + lv.groups[g].value * lv.groups[g].size;
    lv.amounts.assign(m, 0);
    lv.child.resize(m);
    allocate(lv, 0, 0, INT64_MAX, cols_[col]);
    return std::move(lv.total);
  }

  void allocate(Level& lv, size_t gi, int idx, int64_t prev, int64_t left) {
    if (left == 0) {
      emit(lv);
      return;
    }
    if (gi == lv.groups.size()) return;
    const Group& g = lv.groups[gi];
    if (idx == g.size) {
      allocate(lv, gi + 1, 0, INT64_MAX, left);
      return;
    }
    const int64_t cap = std::min({prev, g.value, left});
    if (cap * (g.size - idx) + lv.suffix_cap[gi + 1] < left) return;
    for (int64_t a = cap; a >= 1; --a) {
      lv.amounts[g.begin + idx] = a;
      allocate(lv, gi, idx + 1, a, left - a);
    }
    lv.amounts[g.begin + idx] = 0;
    allocate(lv, gi + 1, 0, INT64_MAX, left);  // rest of this group stays zero
  }

  void emit(Level& lv) {
    const std::vector<int64_t>& rem = *lv.remaining;
    for (size_t i = 0; i < rem.size(); ++i) lv.child[i] = rem[i] - lv.amounts[i];
    BigInt ways = orderings(lv);
    std::sort(lv.child.begin(), lv.child.end(), std::greater<>());
    lv.total += ways * solve(lv.child, lv.col + 1);
  }

  // Distinct row orderings of the chosen amounts within each run of
  // equal remaining values.
  BigInt orderings(const Level& lv) {
    BigInt ways = 1;
    for (const Group& g : lv.groups) {
      if (g.size == 1) continue;
      ways *= factorials_[static_cast<size_t>(g.size)];
      int run = 1;
      for (int i = 1; i <= g.size; ++i) {
        if (i < g.size && lv.amounts[g.begin + i] == lv.amounts[g.begin + i - 1]) {
          ++run;
        } else {
          if (run > 1) ways /= factorials_[static_cast<size_t>(run)];
          run = 1;
        }
      }
    }
    return ways;
  }

  std::vector<int64_t> root_;
  std::vector<int64_t> cols_;
  std::vector<BigInt> factorials_;
  std::unordered_map<MemoKey, BigInt, MemoKeyHash> memo_;
  Clock::time_point deadline_{};
  bool has_deadline_ = false;
  uint32_t ticks_ = 0;
};

}  // namespace detail

inline BigInt count_margins_general(const GeneralMargins& margins,
                                    const CountOptions& options = {}) {
  detail::MarginCounter counter(margins.row_sums(), margins.col_sums(), options);
  return counter.run();
}

inline BigInt count_constant_margins(const MarginSpec& spec, const CountOptions& options = {}) {
  return count_margins_general(spec.to_general(), options);
}

// Deliberately naive test oracle: an odometer over all entry assignments
// (entry (i,j) ranges over 0..row_sum_i), filtered on the margins.  Shares
// no logic with the engine above.
inline BigInt brute_force_count(const GeneralMargins& margins,
                                uint64_t max_candidates = 100000000ull) {
  const std::vector<long long>& rows = margins.row_sums();
  const std::vector<long long>& cols = margins.col_sums();
  const size_t m = rows.size();
  const size_t n = cols.size();

  long double candidates = 1.0L;
  for (long long r : rows) candidates *= std::pow(static_cast<long double>(r) + 1.0L,
                                                  static_cast<long double>(n));
  if (candidates > static_cast<long double>(max_candidates))
    throw OracleBudgetError("oracle budget exceeded");

  std::vector<long long> cells(m * n, 0);
  unsigned long long matches = 0;
  for (;;) {
    bool ok = true;
    for (size_t i = 0; ok && i < m; ++i) {
      long long sum = 0;
      for (size_t j = 0; j < n; ++j) sum += cells[i * n + j];
      ok = sum == rows[i];
    }
    for (size_t j = 0; ok && j < n; ++j) {
      long long sum = 0;
      for (size_t i = 0; i < m; ++i) sum += cells[i * n + j];
      ok = sum == cols[j];
    }
    if (ok) ++matches;

    size_t p = 0;
    while (p < cells.size() && cells[p] == rows[p / n]) {
      cells[p] = 0;
      ++p;
    }
    if (p == cells.size()) break;
    ++cells[p];
  }
  return BigInt(matches);
}

}  // namespace tpvol
