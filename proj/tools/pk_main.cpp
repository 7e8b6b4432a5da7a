// pk: exact k-regular partition tables, Jensen-polynomial hyperbolicity
// checks, threshold/convergence surveys, and asymptotic-model probes.
// Exit codes: 0 success, 1 usage/config error, 2 cross-check failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pk/pk.hpp"

namespace {

namespace fs = std::filesystem;

struct GlobalOpts {
  std::string cache_dir_flag;
  long precision = 128;
  int jobs = 1;
  unsigned long seed = 0;
  int truncation = 40;

  fs::path cache_dir() const {
    if (!cache_dir_flag.empty()) return cache_dir_flag;
    if (const char* env = std::getenv("PK_CACHE_DIR"); env != nullptr && *env != '\0') return env;
    return "pk-cache";
  }
};

std::string join_points(const std::vector<long>& points) {
  std::ostringstream os;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) os << ",";
    os << points[i];
  }
  return os.str();
}

pk::RunConfig base_config(const GlobalOpts& g, const std::string& command) {
  pk::RunConfig cfg;
  cfg.command = command;
  cfg.precision = g.precision;
  cfg.delta_truncation = g.truncation;
  cfg.cache_dir = g.cache_dir().string();
  cfg.seed = g.seed;
  cfg.parallelism = g.jobs;
  return cfg;
}

int run_gen(const GlobalOpts& g, long k, long max_n, const std::string& method_str) {
  const auto method = pk::method_from_name(method_str);
  auto [table, hit] = pk::load_or_compute(g.cache_dir(), k, max_n, method);
  if (hit) {
    std::cout << "cache hit: k=" << k << " method=" << method_str
              << " max_n=" << table.max_n << " (requested " << max_n << ")\n";
  } else {
    std::cout << "computed: k=" << k << " method=" << method_str << " max_n=" << table.max_n
              << "\n";
  }
  std::cout << (g.cache_dir() / pk::cache_file_name(k, method)).string() << "\n";
  return 0;
}

int run_check(const GlobalOpts& g, long k, int d, long n, const std::string& output) {
  pk::RunConfig cfg = base_config(g, "check");
  cfg.k = k;
  cfg.d = d;
  cfg.max_n = n;
  const auto table = pk::load_or_compute(g.cache_dir(), k, n + d).first;
  const auto jensen = pk::jensen_polynomial(table, d, n);
  const auto hankel = pk::hyperbolic_by_hankel(jensen);
  const int sturm_roots = pk::sturm_real_root_count(jensen);
  const bool sturm_verdict = pk::hyperbolic_by_sturm(jensen);

  std::cout << cfg.to_comment_lines();
  std::cout << "jensen polynomial (k=" << k << ", d=" << d << ", n=" << n
            << "): " << jensen.to_string() << "\n";
  std::cout << "newton sums:";
  for (const auto& s : hankel.newton_sums) std::cout << " " << pk::rat_to_string(s);
  std::cout << "\nhankel leading minors:";
  for (const auto& m : hankel.minors) std::cout << " " << pk::rat_to_string(m);
  std::cout << "\nhankel verdict: " << (hankel.hyperbolic ? "hyperbolic" : "not-hyperbolic")
            << "\n";
  std::cout << "sturm distinct real roots: " << sturm_roots << "\n";
  std::cout << "sturm verdict: " << (sturm_verdict ? "hyperbolic" : "not-hyperbolic") << "\n";
  if (hankel.hyperbolic != sturm_verdict) {
    throw pk::CrossCheckError("check: hankel and sturm verdicts disagree at k=" +
                              std::to_string(k) + " d=" + std::to_string(d) +
                              " n=" + std::to_string(n));
  }
  std::cout << "verdict: " << (hankel.hyperbolic ? "hyperbolic" : "not-hyperbolic") << "\n";

  if (!output.empty()) {
    pk::Json report{{"jensen", pk::to_json(jensen)},
                    {"hankel", pk::to_json(hankel)},
                    {"sturm_distinct_real_roots", sturm_roots},
                    {"verdict", hankel.hyperbolic ? "hyperbolic" : "not-hyperbolic"}};
    pk::write_json_report(output, cfg, report);
    std::cout << "wrote " << output << "\n";
  }
  return 0;
}

int run_scan(const GlobalOpts& g, long k, int d, long horizon, int order,
             const std::string& format, std::string output) {
  pk::RunConfig cfg = base_config(g, "scan");
  cfg.k = k;
  cfg.horizon = horizon;
  cfg.format = format;

  pk::Json report_json;
  std::string report_csv;
  std::ostringstream summary;
  if (order == 0) {
    cfg.d = d;
    const auto table = pk::load_or_compute(g.cache_dir(), k, horizon + d).first;
    const auto rep = pk::threshold_scan(table, d, horizon, g.jobs);
    report_json = pk::to_json(rep);
    report_csv = pk::to_csv(rep);
    if (output.empty()) {
      output = "scan-k" + std::to_string(k) + "-d" + std::to_string(d) + "-h" +
               std::to_string(horizon) + "." + format;
    }
    summary << "threshold scan k=" << k << " d=" << d << " horizon=" << horizon << ": failures="
            << rep.failures.size() << " empirical_threshold=" << rep.empirical_threshold
            << " conclusive=" << (rep.conclusive ? "yes" : "no");
    if (!rep.conclusive) summary << " (suggested horizon " << rep.suggested_horizon << ")";
  } else {
    cfg.order = order;
    const auto table = pk::load_or_compute(g.cache_dir(), k, horizon + order).first;
    const auto rep = pk::turan_scan(table, order, horizon);
    report_json = pk::to_json(rep);
    report_csv = pk::to_csv(rep);
    if (output.empty()) {
      output = "turan-k" + std::to_string(k) + "-o" + std::to_string(order) + "-h" +
               std::to_string(horizon) + "." + format;
    }
    summary << "turan scan k=" << k << " order=" << order << " horizon=" << horizon
            << ": failures=" << rep.failures.size()
            << " empirical_threshold=" << rep.empirical_threshold
            << " conclusive=" << (rep.conclusive ? "yes" : "no");
    if (!rep.conclusive) summary << " (suggested horizon " << rep.suggested_horizon << ")";
  }

  if (format == "json") {
    pk::write_json_report(output, cfg, report_json);
  } else {
    pk::write_csv_report(output, cfg, report_csv);
  }
  std::cout << summary.str() << "\n";
  std::cout << "wrote " << output << "\n";
  return 0;
}

int run_converge(const GlobalOpts& g, long k, int d, const std::vector<long>& points,
                 const std::string& format, std::string output) {
  pk::RunConfig cfg = base_config(g, "converge");
  cfg.k = k;
  cfg.d = d;
  cfg.points = join_points(points);
  cfg.format = format;
  const long top = *std::max_element(points.begin(), points.end());
  const auto table = pk::load_or_compute(g.cache_dir(), k, top + d).first;
  pk::AsymptoticParams params;
  params.k = k;
  params.d = d;
  params.delta_truncation = g.truncation;
  params.precision = g.precision;
  const auto rep = pk::convergence_scan(table, d, points, params);
  if (output.empty()) {
    output = "converge-k" + std::to_string(k) + "-d" + std::to_string(d) + "." + format;
  }
  if (format == "json") {
    pk::write_json_report(output, cfg, pk::to_json(rep));
  } else {
    pk::write_csv_report(output, cfg, pk::to_csv(rep));
  }
  for (const auto& row : rep.rows) {
    std::cout << "n=" << row.n << " sup_distance=" << pk::float_str(row.sup_dist, 12)
              << " coeff_deviation=" << pk::float_str(row.coeff_dev, 12) << "\n";
  }
  std::cout << "wrote " << output << "\n";
  return 0;
}

int run_asymp(const GlobalOpts& g, long k, int d, const std::vector<long>& points,
              const std::string& format, std::string output) {
  pk::RunConfig cfg = base_config(g, "asymp");
  cfg.k = k;
  cfg.d = d;
  cfg.points = join_points(points);
  cfg.format = format;
  const long top = *std::max_element(points.begin(), points.end());
  const auto table = pk::load_or_compute(g.cache_dir(), k, top + d).first;
  pk::AsymptoticParams params;
  params.k = k;
  params.d = d;
  params.delta_truncation = g.truncation;
  params.precision = g.precision;

  std::vector<pk::LogQuotientResidual> rows;
  for (long n : points) {
    for (int j = 0; j <= d; ++j) {
      rows.push_back(pk::log_quotient_residual(table, n, j, params));
    }
  }
  if (output.empty()) {
    output = "asymp-k" + std::to_string(k) + "-d" + std::to_string(d) + "." + format;
  }
  if (format == "json") {
    pk::Json arr = pk::Json::array();
    for (const auto& r : rows) arr.push_back(pk::to_json(r, k, d));
    pk::write_json_report(output, cfg, arr);
  } else {
    std::string body = pk::residual_csv_header();
    for (const auto& r : rows) body += pk::to_csv_row(r, k, d);
    pk::write_csv_report(output, cfg, body);
  }
  std::cout << "computed " << rows.size() << " residual rows\n";
  std::cout << "wrote " << output << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pk: exact k-regular partition tables, Jensen-polynomial hyperbolicity, "
               "threshold surveys, and asymptotic-model probes"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand name

  GlobalOpts g;
  app.add_option("--cache-dir", g.cache_dir_flag,
                 "table cache directory (default: $PK_CACHE_DIR, else ./pk-cache)");
  app.add_option("--precision", g.precision, "working precision in bits (default 128)")
      ->check(CLI::Range(8L, 1L << 20));
  app.add_option("--jobs", g.jobs, "worker threads for scans (default 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed echoed into report headers");
  app.add_option("--truncation", g.truncation, "delta-series truncation R (default 40)")
      ->check(CLI::Range(2, 100000));

  auto* gen = app.add_subcommand("gen", "build and cache a partition table");
  long gen_k = 0, gen_n = 0;
  std::string gen_method = "pentagonal";
  gen->add_option("-k,--modulus", gen_k, "exclude parts divisible by k (k >= 2)")
      ->required()
      ->check(CLI::Range(2L, 100000000L));
  gen->add_option("-n,--max-n", gen_n, "largest index to tabulate")
      ->required()
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--method", gen_method, "pentagonal (default) or dp")
      ->check(CLI::IsMember({"pentagonal", "dp"}));

  auto* check = app.add_subcommand("check", "hyperbolicity of one Jensen polynomial, both deciders");
  long chk_k = 0, chk_n = 0;
  int chk_d = 0;
  std::string chk_output;
  check->add_option("-k,--modulus", chk_k)->required()->check(CLI::Range(2L, 100000000L));
  check->add_option("-d,--degree", chk_d)->required()->check(CLI::Range(1, 64));
  check->add_option("-n,--shift", chk_n)->required()->check(CLI::NonNegativeNumber);
  check->add_option("-o,--output", chk_output, "also write a JSON report here");

  auto* scan = app.add_subcommand("scan", "hyperbolicity or Turan threshold scan");
  long scan_k = 0, scan_h = 0;
  int scan_d = 1, scan_order = 0;
  std::string scan_fmt = "json", scan_output;
  scan->add_option("-k,--modulus", scan_k)->required()->check(CLI::Range(2L, 100000000L));
  scan->add_option("-d,--degree", scan_d)->check(CLI::Range(1, 64));
  scan->add_option("--horizon", scan_h)->required()->check(CLI::PositiveNumber);
  scan->add_option("--turan", scan_order, "scan the Turan inequality of this order instead")
      ->check(CLI::IsMember({2, 3}));
  scan->add_option("--format", scan_fmt)->check(CLI::IsMember({"json", "csv"}));
  scan->add_option("-o,--output", scan_output, "report path (default derived from arguments)");

  auto* converge = app.add_subcommand("converge", "distance of renormalized Jensen to Hermite");
  long conv_k = 0;
  int conv_d = 1;
  std::vector<long> conv_points;
  std::string conv_fmt = "csv", conv_output;
  converge->add_option("-k,--modulus", conv_k)->required()->check(CLI::Range(2L, 100000000L));
  converge->add_option("-d,--degree", conv_d)->required()->check(CLI::Range(1, 64));
  converge->add_option("--points", conv_points, "comma-separated shifts n")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  converge->add_option("--format", conv_fmt)->check(CLI::IsMember({"json", "csv"}));
  converge->add_option("-o,--output", conv_output);

  auto* asymp = app.add_subcommand("asymp", "log-quotient residuals of the quadratic model");
  long asy_k = 0;
  int asy_d = 1;
  std::vector<long> asy_points;
  std::string asy_fmt = "csv", asy_output;
  asymp->add_option("-k,--modulus", asy_k)->required()->check(CLI::Range(2L, 100000000L));
  asymp->add_option("-d,--degree", asy_d)->required()->check(CLI::Range(1, 64));
  asymp->add_option("--points", asy_points, "comma-separated base indices n")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  asymp->add_option("--format", asy_fmt)->check(CLI::IsMember({"json", "csv"}));
  asymp->add_option("-o,--output", asy_output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gen) return run_gen(g, gen_k, gen_n, gen_method);
    if (*check) return run_check(g, chk_k, chk_d, chk_n, chk_output);
    if (*scan) return run_scan(g, scan_k, scan_d, scan_h, scan_order, scan_fmt, scan_output);
    if (*converge) return run_converge(g, conv_k, conv_d, conv_points, conv_fmt, conv_output);
    if (*asymp) return run_asymp(g, asy_k, asy_d, asy_points, asy_fmt, asy_output);
  } catch (const pk::CrossCheckError& e) {
    std::cerr << "cross-check failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
