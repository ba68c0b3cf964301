#pragma once

// Accuracy table for the doubly stochastic case: one row per n with the
// asymptotic volume estimate, the exact volume where it is computed (or
// supplied from a literature file), and their ratio.

#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "tpvol/asymptotics.hpp"
#include "tpvol/count_cache.hpp"
#include "tpvol/ehrhart.hpp"
#include "tpvol/log_real.hpp"
#include "tpvol/scaled_volume.hpp"

namespace tpvol {

struct TableRow {
  int n = 0;
  LogReal estimate_log;
  std::optional<ScaledVolume> exact_volume;
  std::optional<double> ratio;  // estimate / exact; present iff exact_volume is
  bool from_actual_file = false;
  bool timed_out = false;
};

struct Table1Options {
  int max_n = 5;
  int max_exact_n = 5;
  double time_budget_seconds = 600.0;  // per exact count
  int threads = 1;
  CountCache* cache = nullptr;
  std::map<int, Rational> actual_volumes;  // externally supplied exact values
};

inline std::vector<TableRow> table1_rows(const Table1Options& options = {}) {
  std::vector<TableRow> rows;
  for (int n = 1; n <= options.max_n; ++n) {
    TableRow row;
    row.n = n;
    row.estimate_log = estimate_birkhoff_volume_log(n);
    if (n <= options.max_exact_n) {
      try {
        const CountFn counter =
            cached_counter(options.cache, CountOptions{options.time_budget_seconds});
        EhrhartOptions eopts;
        eopts.counter = counter;
        eopts.threads = options.threads;
        const EhrhartPolynomial poly = interpolate_ehrhart(n, n, eopts);
        row.exact_volume = absolute_volume(n, n, relative_volume(poly));
      } catch (const BudgetExceededError&) {
        row.timed_out = true;  // abort this row, not the run
      }
    }
    if (!row.exact_volume) {
      const auto it = options.actual_volumes.find(n);
      if (it != options.actual_volumes.end()) {
        row.exact_volume = ScaledVolume{it->second, n, n, 0, 0};
        row.from_actual_file = true;
      }
    }
    if (row.exact_volume)
      row.ratio = std::exp(row.estimate_log.log() - row.exact_volume->log_value());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace tpvol
