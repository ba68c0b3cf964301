// Command-line front end: exact counts, Ehrhart polynomials, exact and
// asymptotic volumes, the accuracy table, and the hypothesis check.
//
// Exit codes: 0 success, 1 usage error, 2 computation budget exceeded,
// 3 cache corruption.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tpvol/tpvol.hpp"

namespace {

using nlohmann::ordered_json;
using namespace tpvol;

std::string real_str(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::unique_ptr<CountCache> open_cache(const std::string& path) {
  if (path.empty()) return nullptr;
  return std::make_unique<CountCache>(path);
}

std::string poly_to_string(const EhrhartPolynomial& poly) {
  std::string out = "H(z) = ";
  bool first = true;
  for (size_t i = 0; i < poly.coeffs.size(); ++i) {
    const Rational& c = poly.coeffs[i];
    if (c == 0) continue;
    const long long e = poly.degree - static_cast<long long>(i);
    if (!first) out += " + ";
    std::string cs = rational_to_string(c);
    if (c < 0) cs = "(" + cs + ")";
    if (e == 0) {
      out += cs;
    } else {
      const std::string var = e == 1 ? "z" : "z^" + std::to_string(e);
      out += c == 1 ? var : cs + " " + var;
    }
    first = false;
  }
  if (first) out += "0";
  return out;
}

std::map<int, Rational> load_actual_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open actual-values file: " + path);
  std::map<int, Rational> values;
  std::string line;
  long long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line == "n,volume") continue;
    const auto fail = [&](const std::string& reason) {
      throw std::invalid_argument("actual-values file line " + std::to_string(lineno) + ": " +
                                  reason);
    };
    const size_t comma = line.find(',');
    if (comma == std::string::npos) fail("expected n,volume");
    int n = 0;
    try {
      n = std::stoi(line.substr(0, comma));
    } catch (const std::exception&) {
      fail("bad n");
    }
    Rational volume;
    try {
      volume = parse_rational(line.substr(comma + 1));
    } catch (const std::exception&) {
      fail("bad volume");
    }
    if (n < 1 || volume <= 0) fail("values must be positive");
    values[n] = volume;
  }
  return values;
}

struct CountArgs {
  long long m = 0, s = 0, n = 0, t = 0;
  std::string cache_path;
  double time_budget = 600.0;
};

int run_count(const CountArgs& a) {
  const MarginSpec spec(a.m, a.s, a.n, a.t);
  const auto cache = open_cache(a.cache_path);
  const BigInt count = cached_counter(cache.get(), CountOptions{a.time_budget})(spec);
  std::cout << count.str() << "\n";
  return 0;
}

struct EhrhartArgs {
  long long m = 0, n = 0;
  std::string cache_path;
  double time_budget = 600.0;
  int threads = 1;
  std::string format = "text";
};

int run_ehrhart(const EhrhartArgs& a) {
  const auto cache = open_cache(a.cache_path);
  EhrhartOptions opts;
  opts.counter = cached_counter(cache.get(), CountOptions{a.time_budget});
  opts.threads = a.threads;
  const EhrhartPolynomial poly = interpolate_ehrhart(a.m, a.n, opts);
  if (a.format == "json") {
    ordered_json out;
    out["m"] = poly.m;
    out["n"] = poly.n;
    out["degree"] = poly.degree;
    out["period"] = poly.z0;
    std::vector<std::string> coeffs;
    for (const Rational& c : poly.coeffs) coeffs.push_back(rational_to_string(c));
    out["coefficients"] = coeffs;
    std::cout << out.dump() << "\n";
  } else if (a.format == "csv") {
    std::cout << "i,coefficient\n";
    for (size_t i = 0; i < poly.coeffs.size(); ++i)
      std::cout << i << "," << rational_to_string(poly.coeffs[i]) << "\n";
  } else {
    std::cout << "m = " << poly.m << ", n = " << poly.n << "\n";
    std::cout << "degree = " << poly.degree << "\n";
    std::cout << "period = " << poly.z0 << "\n";
    std::cout << poly_to_string(poly) << "\n";
  }
  return 0;
}

struct VolumeArgs {
  long long m = 0, n = 0;
  bool exact = false;
  bool estimate = false;
  std::string cache_path;
  double time_budget = 600.0;
  int threads = 1;
  std::string format = "text";
  int digits = 6;
};

int run_volume(const VolumeArgs& a) {
  if (a.estimate) {
    const LogReal est = estimate_volume_log(a.m, a.n);
    if (a.format == "json") {
      ordered_json out;
      out["m"] = a.m;
      out["n"] = a.n;
      out["log_vol_estimate"] = est.log();
      out["vol_estimate"] = est.to_scientific(a.digits);
      std::cout << out.dump() << "\n";
    } else {
      std::cout << "log_vol_estimate = " << real_str(est.log(), a.digits) << "\n";
      std::cout << "vol_estimate ~= " << est.to_scientific(a.digits) << "\n";
    }
    return 0;
  }
  const auto cache = open_cache(a.cache_path);
  EhrhartOptions opts;
  opts.counter = cached_counter(cache.get(), CountOptions{a.time_budget});
  opts.threads = a.threads;
  const EhrhartPolynomial poly = interpolate_ehrhart(a.m, a.n, opts);
  const Rational nu = relative_volume(poly);
  const ScaledVolume vol = absolute_volume(a.m, a.n, nu);
  if (a.format == "json") {
    ordered_json out;
    out["m"] = a.m;
    out["n"] = a.n;
    out["nu"] = rational_to_string(nu);
    out["vol"] = vol.to_string();
    out["vol_value"] = vol.value();
    std::cout << out.dump() << "\n";
  } else if (a.format == "csv") {
    std::cout << "key,value\n";
    std::cout << "nu," << rational_to_string(nu) << "\n";
    std::cout << "vol," << vol.to_string() << "\n";
  } else {
    std::cout << "nu = " << rational_to_string(nu) << "\n";
    std::cout << "vol = " << vol.to_string() << "\n";
    if (!vol.exact_rational())
      std::cout << "vol ~= " << real_str(vol.value(), a.digits) << "\n";
  }
  return 0;
}

struct EstimateArgs {
  long long m = 0, n = 0;
  long long s = -1, t = -1, z = -1, lambda_mult = -1;
  std::string format = "text";
  int digits = 6;
};

int run_estimate(const EstimateArgs& a) {
  int modes = 0;
  if (a.s >= 0 || a.t >= 0) ++modes;
  if (a.z >= 0) ++modes;
  if (a.lambda_mult >= 0) ++modes;
  if (modes > 1)
    throw std::invalid_argument("choose one of --s/--t, --z, or --lambda-mult");

  ordered_json out;
  out["m"] = a.m;
  out["n"] = a.n;
  std::vector<std::pair<std::string, std::string>> lines;
  if (a.s >= 0 || a.t >= 0 || a.z >= 0) {
    long long s = a.s, t = a.t;
    if (a.z >= 0) {
      if ((a.z * a.m) % a.n != 0)
        throw std::invalid_argument("--z must be a multiple of the period n/gcd(m,n)");
      s = a.z;
      t = a.z * a.m / a.n;
    }
    if (s < 0 || t < 0) throw std::invalid_argument("--s and --t must be given together");
    const LogReal est = estimate_count_log(MarginSpec(a.m, s, a.n, t));
    out["s"] = s;
    out["t"] = t;
    out["log_count_estimate"] = est.log();
    out["count_estimate"] = est.to_scientific(a.digits);
    lines.emplace_back("log_count_estimate", real_str(est.log(), a.digits));
    lines.emplace_back("count_estimate~", est.to_scientific(a.digits));
  } else if (a.lambda_mult >= 0) {
    const LogReal proxy = estimate_rel_volume_proxy_log(a.m, a.n, a.lambda_mult);
    const long long z = a.lambda_mult * period(a.m, a.n);
    out["z"] = z;
    out["log_nu_proxy"] = proxy.log();
    out["nu_proxy"] = proxy.to_scientific(a.digits);
    lines.emplace_back("z", std::to_string(z));
    lines.emplace_back("log_nu_proxy", real_str(proxy.log(), a.digits));
    lines.emplace_back("nu_proxy~", proxy.to_scientific(a.digits));
  } else {
    const LogReal est = estimate_volume_log(a.m, a.n);
    out["log_vol_estimate"] = est.log();
    out["vol_estimate"] = est.to_scientific(a.digits);
    lines.emplace_back("log_vol_estimate", real_str(est.log(), a.digits));
    lines.emplace_back("vol_estimate~", est.to_scientific(a.digits));
  }
  if (a.format == "json") {
    std::cout << out.dump() << "\n";
  } else if (a.format == "csv") {
    std::cout << "key,value\n";
    for (const auto& [key, value] : lines) {
      const std::string k = !key.empty() && key.back() == '~' ? key.substr(0, key.size() - 1) : key;
      std::cout << k << "," << value << "\n";
    }
  } else {
    for (const auto& [key, value] : lines) {
      if (!key.empty() && key.back() == '~')
        std::cout << key.substr(0, key.size() - 1) << " ~= " << value << "\n";
      else
        std::cout << key << " = " << value << "\n";
    }
  }
  return 0;
}

struct TableArgs {
  int max_n = 5;
  int max_exact_n = 5;
  std::string actual_file;
  std::string cache_path;
  double time_budget = 600.0;
  int threads = 1;
  std::string format = "text";
  int digits = 6;
};

int run_table1(const TableArgs& a) {
  const auto cache = open_cache(a.cache_path);
  Table1Options opts;
  opts.max_n = a.max_n;
  opts.max_exact_n = a.max_exact_n;
  opts.time_budget_seconds = a.time_budget;
  opts.threads = a.threads;
  opts.cache = cache.get();
  if (!a.actual_file.empty()) opts.actual_volumes = load_actual_file(a.actual_file);

  const std::vector<TableRow> rows = table1_rows(opts);
  const auto status_of = [](const TableRow& row) -> std::string {
    if (row.timed_out) return "timeout";
    if (row.from_actual_file) return "actual-file";
    return row.exact_volume ? "exact" : "estimate-only";
  };
  if (a.format == "json") {
    ordered_json out;
    out["rows"] = ordered_json::array();
    for (const TableRow& row : rows) {
      ordered_json j;
      j["n"] = row.n;
      j["estimate_log"] = row.estimate_log.log();
      j["exact_volume"] =
          row.exact_volume ? ordered_json(row.exact_volume->to_string()) : ordered_json(nullptr);
      j["ratio"] = row.ratio ? ordered_json(*row.ratio) : ordered_json(nullptr);
      j["status"] = status_of(row);
      out["rows"].push_back(std::move(j));
    }
    std::cout << out.dump() << "\n";
  } else if (a.format == "csv") {
    std::cout << "n,estimate_log,exact_volume,ratio,status\n";
    for (const TableRow& row : rows) {
      std::cout << row.n << "," << real_str(row.estimate_log.log(), a.digits) << ","
                << (row.exact_volume ? row.exact_volume->to_string() : "") << ","
                << (row.ratio ? real_str(*row.ratio, a.digits) : "") << "," << status_of(row)
                << "\n";
    }
  } else {
    std::cout << "n   estimate/actual\n";
    for (const TableRow& row : rows) {
      std::string cell = "-";
      if (row.ratio)
        cell = real_str(*row.ratio, a.digits);
      else if (row.timed_out)
        cell = "timeout";
      std::printf("%-3d %s\n", row.n, cell.c_str());
    }
  }
  bool any_timeout = false;
  for (const TableRow& row : rows) any_timeout = any_timeout || row.timed_out;
  return any_timeout ? 2 : 0;
}

struct HypArgs {
  long long m = 0, n = 0;
  std::string lambda = "1";
  long long lambda_mult = -1;
  double a = 0.3;
  std::string format = "text";
  int digits = 6;
};

int run_hyp(const HypArgs& args) {
  Rational lambda;
  if (args.lambda_mult >= 0) {
    if (args.lambda_mult < 1) throw std::invalid_argument("--lambda-mult must be positive");
    lambda = Rational(args.lambda_mult * period(args.m, args.n), args.n);
  } else {
    lambda = parse_rational(args.lambda);
  }
  const HypReport report = hyp_margin(args.m, args.n, lambda, args.a);
  if (args.format == "json") {
    ordered_json out;
    out["m"] = args.m;
    out["n"] = args.n;
    out["lambda"] = rational_to_string(lambda);
    out["a"] = report.a;
    out["lhs"] = report.lhs;
    out["lhs_exact"] = rational_to_string(report.lhs_exact);
    out["rhs"] = report.rhs;
    out["satisfied"] = report.satisfied;
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "lhs = " << real_str(report.lhs, args.digits) << "\n";
    std::cout << "rhs = " << real_str(report.rhs, args.digits) << "\n";
    std::cout << "satisfied = " << (report.satisfied ? "yes" : "no") << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and asymptotic volumes of transportation polytopes"};
  app.set_version_flag("--version", "tpvol 0.1.0");
  app.require_subcommand(1);
  const std::vector<std::string> formats{"text", "csv", "json"};

  CountArgs count_args;
  auto* count_cmd =
      app.add_subcommand("count", "Exact number of matrices with constant margins");
  count_cmd->add_option("--m", count_args.m, "number of rows")->required();
  count_cmd->add_option("--s", count_args.s, "row sum")->required();
  count_cmd->add_option("--n", count_args.n, "number of columns")->required();
  count_cmd->add_option("--t", count_args.t, "column sum")->required();
  count_cmd->add_option("--cache", count_args.cache_path, "count cache file");
  count_cmd->add_option("--time-budget", count_args.time_budget, "seconds per exact count");

  EhrhartArgs ehrhart_args;
  auto* ehrhart_cmd =
      app.add_subcommand("ehrhart", "Interpolate the lattice-point counting polynomial");
  ehrhart_cmd->add_option("--m", ehrhart_args.m, "number of rows")->required();
  ehrhart_cmd->add_option("--n", ehrhart_args.n, "number of columns")->required();
  ehrhart_cmd->add_option("--cache", ehrhart_args.cache_path, "count cache file");
  ehrhart_cmd->add_option("--time-budget", ehrhart_args.time_budget, "seconds per exact count");
  ehrhart_cmd->add_option("--threads", ehrhart_args.threads, "worker threads for grid counts");
  ehrhart_cmd->add_option("--format", ehrhart_args.format, "text|csv|json")
      ->check(CLI::IsMember(formats));

  VolumeArgs volume_args;
  auto* volume_cmd = app.add_subcommand("volume", "Exact polytope volume");
  volume_cmd->add_option("--m", volume_args.m, "number of rows")->required();
  volume_cmd->add_option("--n", volume_args.n, "number of columns")->required();
  auto* exact_flag = volume_cmd->add_flag("--exact", volume_args.exact,
                                          "compute the exact volume (default)");
  volume_cmd->add_flag("--estimate", volume_args.estimate, "print the asymptotic estimate instead")
      ->excludes(exact_flag);
  volume_cmd->add_option("--cache", volume_args.cache_path, "count cache file");
  volume_cmd->add_option("--time-budget", volume_args.time_budget, "seconds per exact count");
  volume_cmd->add_option("--threads", volume_args.threads, "worker threads for grid counts");
  volume_cmd->add_option("--format", volume_args.format, "text|csv|json")
      ->check(CLI::IsMember(formats));
  volume_cmd->add_option("--digits", volume_args.digits, "significant digits for reals")
      ->check(CLI::Range(1, 17));

  EstimateArgs estimate_args;
  auto* estimate_cmd =
      app.add_subcommand("estimate", "Asymptotic count/volume estimates in log space");
  estimate_cmd->add_option("--m", estimate_args.m, "number of rows")->required();
  estimate_cmd->add_option("--n", estimate_args.n, "number of columns")->required();
  estimate_cmd->add_option("--s", estimate_args.s, "row sum (count estimate)");
  estimate_cmd->add_option("--t", estimate_args.t, "column sum (count estimate)");
  estimate_cmd->add_option("--z", estimate_args.z, "dilation factor (count estimate at z)");
  estimate_cmd->add_option("--lambda-mult", estimate_args.lambda_mult,
                           "dilation multiple of the period (relative-volume proxy)");
  estimate_cmd->add_option("--format", estimate_args.format, "text|csv|json")
      ->check(CLI::IsMember(formats));
  estimate_cmd->add_option("--digits", estimate_args.digits, "significant digits for reals")
      ->check(CLI::Range(1, 17));

  TableArgs table_args;
  auto* table_cmd =
      app.add_subcommand("table1", "Estimate/actual accuracy table for doubly stochastic matrices");
  table_cmd->add_option("--max-n", table_args.max_n, "last row of the table")
      ->check(CLI::Range(1, 1000));
  table_cmd->add_option("--max-exact-n", table_args.max_exact_n,
                        "compute exact volumes up to this n");
  table_cmd->add_option("--actual-file", table_args.actual_file,
                        "CSV n,volume with externally known exact volumes");
  table_cmd->add_option("--cache", table_args.cache_path, "count cache file");
  table_cmd->add_option("--time-budget", table_args.time_budget, "seconds per exact count");
  table_cmd->add_option("--threads", table_args.threads, "worker threads for counts");
  table_cmd->add_option("--format", table_args.format, "text|csv|json")
      ->check(CLI::IsMember(formats));
  table_cmd->add_option("--digits", table_args.digits, "significant digits for reals")
      ->check(CLI::Range(1, 17));

  HypArgs hyp_args;
  auto* hyp_cmd = app.add_subcommand("hyp", "Density/aspect hypothesis check for the estimate");
  hyp_cmd->add_option("--m", hyp_args.m, "number of rows")->required();
  hyp_cmd->add_option("--n", hyp_args.n, "number of columns")->required();
  hyp_cmd->add_option("--lambda", hyp_args.lambda, "cell density as a rational (default 1)");
  hyp_cmd->add_option("--lambda-mult", hyp_args.lambda_mult,
                      "derive lambda from a dilation multiple of the period");
  hyp_cmd->add_option("--a", hyp_args.a, "constant a in the bound a*log(n)");
  hyp_cmd->add_option("--format", hyp_args.format, "text|csv|json")
      ->check(CLI::IsMember(formats));
  hyp_cmd->add_option("--digits", hyp_args.digits, "significant digits for reals")
      ->check(CLI::Range(1, 17));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (count_cmd->parsed()) return run_count(count_args);
    if (ehrhart_cmd->parsed()) return run_ehrhart(ehrhart_args);
    if (volume_cmd->parsed()) return run_volume(volume_args);
    if (estimate_cmd->parsed()) return run_estimate(estimate_args);
    if (table_cmd->parsed()) return run_table1(table_args);
    if (hyp_cmd->parsed()) return run_hyp(hyp_args);
  } catch (const BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const OracleBudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CacheError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
