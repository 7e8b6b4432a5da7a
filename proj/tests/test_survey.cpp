#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <stdexcept>
#include <vector>

#include "pk/serialize.hpp"
#include "pk/survey.hpp"

using pk::AsymptoticParams;
using pk::Rat;

namespace {

const std::vector<long> kTwoRegularDegree2Failures = {1,  3,  7,  10, 12, 13, 15,
                                                      16, 18, 19, 22, 25, 28, 31};

pk::RegularPartitionTable constant_table(long value, long max_n) {
  pk::RegularPartitionTable t;
  t.k = 2;
  t.max_n = max_n;
  t.values.assign(static_cast<std::size_t>(max_n) + 1, pk::Int(value));
  return t;
}

}  // namespace

TEST_CASE("degree-1 scan never fails") {
  const auto t = pk::compute_table_pentagonal(2, 101);
  const auto rep = pk::threshold_scan(t, 1, 100);
  CHECK(rep.failures.empty());
  CHECK(rep.empirical_threshold == 1);
  CHECK(rep.verified_to == 100);
  CHECK(rep.conclusive);
  CHECK(rep.suggested_horizon == 100);
  CHECK(rep.audits.empty());
}

TEST_CASE("degree-2 scan, frozen failure set") {
  const auto t = pk::compute_table_pentagonal(2, 502);
  const auto rep = pk::threshold_scan(t, 2, 500);
  CHECK(rep.k == 2);
  CHECK(rep.d == 2);
  CHECK(rep.failures == kTwoRegularDegree2Failures);
  CHECK(rep.empirical_threshold == 32);
  CHECK(rep.conclusive);  // tail 500-31 is more than 90% of 500
  CHECK(rep.suggested_horizon == 500);

  REQUIRE(rep.audits.size() == rep.failures.size());
  for (std::size_t i = 0; i < rep.audits.size(); ++i) {
    const auto& audit = rep.audits[i];
    CHECK(audit.n == rep.failures[i]);
    CHECK(audit.hankel.degree == 2);
    CHECK_FALSE(audit.hankel.hyperbolic);
    // A degree-2 non-hyperbolic polynomial has no real roots at all.
    CHECK(audit.sturm_distinct_real_roots == 0);
  }
}

TEST_CASE("scan output is independent of parallelism") {
  const auto t = pk::compute_table_pentagonal(2, 202);
  const auto serial = pk::threshold_scan(t, 2, 200, 1);
  const auto parallel = pk::threshold_scan(t, 2, 200, 4);
  const auto oversubscribed = pk::threshold_scan(t, 2, 200, 64);
  CHECK(pk::to_json(serial) == pk::to_json(parallel));
  CHECK(pk::to_json(serial) == pk::to_json(oversubscribed));
}

TEST_CASE("parallel driver propagates worker exceptions") {
  std::atomic<long> visited{0};
  CHECK_THROWS_AS(pk::detail::parallel_over_shifts(10, 3,
                                                   [&](long n) {
                                                     ++visited;
                                                     if (n == 7) throw std::runtime_error("boom");
                                                   }),
                  std::runtime_error);
  CHECK(visited.load() >= 1);
}

TEST_CASE("inconclusive scan suggests a larger horizon") {
  const auto t = pk::compute_table_pentagonal(2, 42);
  const auto rep = pk::threshold_scan(t, 2, 40);
  CHECK(rep.failures.back() == 31);
  CHECK(rep.empirical_threshold == 32);
  CHECK_FALSE(rep.conclusive);  // tail 40-31 is far below 90% of 40
  CHECK(rep.suggested_horizon == 310);
}

TEST_CASE("degree-3 boundary scan for the unrestricted sequence") {
  // k = 304 > horizon + d keeps the table equal to unrestricted p(n).
  const auto t = pk::compute_table_pentagonal(304, 303);
  const auto rep = pk::threshold_scan(t, 3, 300);
  REQUIRE_FALSE(rep.failures.empty());
  CHECK(rep.failures.back() == 93);
  CHECK(rep.empirical_threshold == 94);
  CHECK_FALSE(rep.conclusive);  // tail 300-93 is below 90% of 300
  CHECK(rep.suggested_horizon == 930);
}

TEST_CASE("scan argument validation") {
  const auto t = pk::compute_table_pentagonal(2, 30);
  CHECK_THROWS_AS(pk::threshold_scan(t, 0, 10), std::invalid_argument);
  CHECK_THROWS_AS(pk::threshold_scan(t, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(pk::threshold_scan(t, 2, 29), std::out_of_range);
  CHECK_NOTHROW(pk::threshold_scan(t, 2, 28));
}

TEST_CASE("inequality scan, frozen failure set") {
  const auto t = pk::compute_table_pentagonal(2, 501);
  const auto rep = pk::turan_scan(t, 2, 500);
  CHECK(rep.order == 2);
  const std::vector<long> expected = {2,  4,  8,  11, 13, 14, 16, 17, 19, 20, 23, 26, 29, 32};
  CHECK(rep.failures == expected);
  CHECK(rep.empirical_threshold == 33);
  CHECK(rep.conclusive);
  REQUIRE(rep.audits.size() == expected.size());
  const auto& last = rep.audits.back();
  CHECK(last.m == 32);
  CHECK(last.lhs == 152100);
  CHECK(last.rhs == 152320);
  CHECK_FALSE(last.holds);
}

TEST_CASE("degree-2 scan and order-2 inequality mark the same boundary") {
  // J^{2,n} fails exactly when the order-2 inequality fails at m = n+1.
  const auto t = pk::compute_table_pentagonal(2, 302);
  const auto poly_side = pk::threshold_scan(t, 2, 300);
  const auto ineq_side = pk::turan_scan(t, 2, 300);
  std::vector<long> shifted;
  for (long m : ineq_side.failures) {
    if (m >= 2 && m - 1 <= 300) shifted.push_back(m - 1);
  }
  CHECK(poly_side.failures == shifted);
}

TEST_CASE("inequality scan on a constant table is clean") {
  const auto t = constant_table(7, 50);
  for (int order : {2, 3}) {
    const auto rep = pk::turan_scan(t, order, 40);
    CHECK(rep.failures.empty());
    CHECK(rep.empirical_threshold == 1);
    CHECK(rep.conclusive);
  }
}

TEST_CASE("inequality scan argument validation") {
  const auto t = pk::compute_table_pentagonal(2, 30);
  CHECK_THROWS_AS(pk::turan_scan(t, 4, 10), std::invalid_argument);
  CHECK_THROWS_AS(pk::turan_scan(t, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(pk::turan_scan(t, 3, 29), std::out_of_range);
  CHECK_NOTHROW(pk::turan_scan(t, 3, 28));
}

TEST_CASE("convergence scan at degree zero is identically zero") {
  const auto t = pk::compute_table_pentagonal(2, 20);
  AsymptoticParams params;
  params.k = 2;
  const auto rep = pk::convergence_scan(t, 0, {5, 10}, params);
  REQUIRE(rep.rows.size() == 2);
  for (const auto& row : rep.rows) {
    CHECK(row.sup_dist.is_zero());
    CHECK(row.coeff_dev.is_zero());
  }
}

TEST_CASE("convergence scan shows decay toward the target") {
  const auto t = pk::compute_table_pentagonal(2, 1602);
  AsymptoticParams params;
  params.k = 2;
  params.d = 2;
  // Unsorted input with a duplicate; the report sorts and dedupes.
  const auto rep = pk::convergence_scan(t, 2, {400, 100, 1600, 100}, params);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[0].n == 100);
  CHECK(rep.rows[1].n == 400);
  CHECK(rep.rows[2].n == 1600);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    CHECK(rep.rows[i].sup_dist.sign() > 0);
    CHECK(rep.rows[i].coeff_dev.sign() > 0);
    if (i > 0) {
      CHECK(rep.rows[i].sup_dist < rep.rows[i - 1].sup_dist);
      CHECK(rep.rows[i].coeff_dev < rep.rows[i - 1].coeff_dev);
    }
  }
  CHECK(rep.grid == 512);
  CHECK(rep.lo == Rat(-5));
  CHECK(rep.hi == Rat(5));
}

TEST_CASE("convergence scan argument validation") {
  const auto t = pk::compute_table_pentagonal(2, 50);
  AsymptoticParams params;
  params.k = 2;
  params.d = 2;
  CHECK_THROWS_AS(pk::convergence_scan(t, 2, {}, params), std::invalid_argument);
  CHECK_THROWS_AS(pk::convergence_scan(t, 2, {0, 10}, params), std::invalid_argument);
  CHECK_THROWS_AS(pk::convergence_scan(t, 2, {49}, params), std::out_of_range);
  CHECK_THROWS_AS(pk::convergence_scan(t, -1, {10}, params), std::invalid_argument);
}
