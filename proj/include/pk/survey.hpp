#pragma once

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "pk/hyperbolicity.hpp"
#include "pk/jensen.hpp"
#include "pk/partitions.hpp"

namespace pk {

// Evidence kept for every failing shift: the matrix-side report plus
// the independent root count, so disagreement is visible in the output.
struct FailureAudit {
  long n = 0;
  HankelReport hankel;
  int sturm_distinct_real_roots = 0;
};

struct ThresholdReport {
  long k = 0;
  int d = 0;
  long horizon = 0;
  std::vector<long> failures;       // shifts n with J^{d,n} not hyperbolic
  long empirical_threshold = 1;     // 1 + max(failures), or 1 if none
  long verified_to = 0;             // = horizon
  bool conclusive = false;          // tail after last failure covers >= 90% of horizon
  long suggested_horizon = 0;       // = horizon when conclusive, else a horizon that would be
  std::vector<FailureAudit> audits;
};

namespace detail {

inline void finish_threshold_fields(long horizon, ThresholdReport& rep) {
  rep.verified_to = horizon;
  if (rep.failures.empty()) {
    rep.empirical_threshold = 1;
    rep.conclusive = true;
    rep.suggested_horizon = horizon;
    return;
  }
  const long last = rep.failures.back();
  rep.empirical_threshold = last + 1;
  rep.conclusive = (horizon - last) * 10 >= horizon * 9;
  rep.suggested_horizon = rep.conclusive ? horizon : last * 10;
}

// Run fn(n) for n in [1, horizon] across contiguous blocks.  Results
// must be written into pre-sized slots so the outcome is independent
// of the thread count.
template <typename Fn>
void parallel_over_shifts(long horizon, int parallelism, Fn&& fn) {
  const int jobs = static_cast<int>(std::clamp<long>(parallelism, 1, horizon));
  if (jobs == 1) {
    for (long n = 1; n <= horizon; ++n) fn(n);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
  const long chunk = (horizon + jobs - 1) / jobs;
  for (int t = 0; t < jobs; ++t) {
    const long lo = 1 + static_cast<long>(t) * chunk;
    const long hi = std::min(horizon, lo + chunk - 1);
    if (lo > hi) break;
    threads.emplace_back([&, t, lo, hi] {
      try {
        for (long n = lo; n <= hi; ++n) fn(n);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail

// Exact hyperbolicity verdict for J^{d,n} at every shift 1 <= n <= horizon.
// Failures are re-decided by the Sturm method; the two must agree.
// Parallel phase writes one flag per shift into a pre-sized vector and
// the report is assembled single-threaded, so output is identical for
// any parallelism.
inline ThresholdReport threshold_scan(const RegularPartitionTable& table, int d, long horizon,
                                      int parallelism = 1) {
  if (d < 1) throw std::invalid_argument("threshold_scan: d must be >= 1");
  if (horizon < 1) throw std::invalid_argument("threshold_scan: horizon must be >= 1");
  if (horizon + d > table.max_n) {
    throw std::out_of_range("threshold_scan: table max_n=" + std::to_string(table.max_n) +
                            " too small for horizon+d=" + std::to_string(horizon + d));
  }
  std::vector<char> ok(static_cast<std::size_t>(horizon) + 1, 1);
  detail::parallel_over_shifts(horizon, parallelism, [&](long n) {
    ok[static_cast<std::size_t>(n)] =
        hyperbolic_by_hankel(jensen_polynomial(table, d, n)).hyperbolic ? 1 : 0;
  });

  ThresholdReport rep;
  rep.k = table.k;
  rep.d = d;
  rep.horizon = horizon;
  for (long n = 1; n <= horizon; ++n) {
    if (ok[static_cast<std::size_t>(n)]) continue;
    const Polynomial<Rat> j = jensen_polynomial(table, d, n);
    FailureAudit audit;
    audit.n = n;
    audit.hankel = hyperbolic_by_hankel(j);
    audit.sturm_distinct_real_roots = sturm_real_root_count(j);
    const bool sturm_verdict = hyperbolic_by_sturm(j);
    if (audit.hankel.hyperbolic || sturm_verdict) {
      throw CrossCheckError("threshold_scan: methods disagree at k=" + std::to_string(table.k) +
                            " d=" + std::to_string(d) + " n=" + std::to_string(n));
    }
    rep.failures.push_back(n);
    rep.audits.push_back(std::move(audit));
  }
  detail::finish_threshold_fields(horizon, rep);
  return rep;
}

// Same summary shape for direct inequality scans over the sequence index m.
struct TuranScanReport {
  long k = 0;
  int order = 0;
  long horizon = 0;
  std::vector<long> failures;  // indices m where the inequality fails
  long empirical_threshold = 1;
  long verified_to = 0;
  bool conclusive = false;
  long suggested_horizon = 0;
  std::vector<TuranVerdict> audits;  // exact lhs/rhs of each failure
};

inline TuranScanReport turan_scan(const RegularPartitionTable& table, int order, long horizon) {
  if (order != 2 && order != 3) throw std::invalid_argument("turan_scan: order must be 2 or 3");
  if (horizon < 1) throw std::invalid_argument("turan_scan: horizon must be >= 1");
  if (horizon + order - 1 > table.max_n) {
    throw std::out_of_range("turan_scan: table too small for horizon");
  }
  TuranScanReport rep;
  rep.k = table.k;
  rep.order = order;
  rep.horizon = horizon;
  for (long m = 1; m <= horizon; ++m) {
    const TuranVerdict v = order == 2 ? turan_order2(table, m) : turan_order3(table, m);
    if (!v.holds) {
      rep.failures.push_back(m);
      rep.audits.push_back(v);
    }
  }
  ThresholdReport shape;
  shape.failures = rep.failures;
  detail::finish_threshold_fields(horizon, shape);
  rep.empirical_threshold = shape.empirical_threshold;
  rep.verified_to = shape.verified_to;
  rep.conclusive = shape.conclusive;
  rep.suggested_horizon = shape.suggested_horizon;
  return rep;
}

struct ConvergenceRow {
  long n = 0;
  BigFloat sup_dist;
  BigFloat coeff_dev;
};

struct ConvergenceReport {
  long k = 0;
  int d = 0;
  Rat lo{-5};
  Rat hi{5};
  int grid = 512;
  std::vector<ConvergenceRow> rows;  // sorted by n
};

// For each n, build the renormalized Jensen polynomial and measure its
// distance to the Hermite target, both as a sup over [lo, hi] and
// coefficient-wise.
inline ConvergenceReport convergence_scan(const RegularPartitionTable& table, int d,
                                          std::vector<long> n_list,
                                          const AsymptoticParams& params, Rat lo = Rat(-5),
                                          Rat hi = Rat(5), int grid = 512) {
  if (d < 0) throw std::invalid_argument("convergence_scan: d must be >= 0");
  if (n_list.empty()) throw std::invalid_argument("convergence_scan: empty n list");
  std::sort(n_list.begin(), n_list.end());
  n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
  if (n_list.front() < 1) throw std::invalid_argument("convergence_scan: shifts must be >= 1");
  if (n_list.back() + d > table.max_n) {
    throw std::out_of_range("convergence_scan: table too small for max shift");
  }
  const Polynomial<Rat> target = hermite_polynomial(d);
  ConvergenceReport rep;
  rep.k = table.k;
  rep.d = d;
  rep.lo = lo;
  rep.hi = hi;
  rep.grid = grid;
  for (long n : n_list) {
    const FloatPolynomial jhat = renormalized_jensen(table, d, n, params, params.precision);
    ConvergenceRow row;
    row.n = n;
    row.sup_dist = sup_distance(jhat, target, lo, hi, grid);
    row.coeff_dev = coefficient_deviation(jhat, target);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace pk
