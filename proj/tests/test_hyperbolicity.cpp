#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "pk/hyperbolicity.hpp"
#include "pk/jensen.hpp"
#include "pk/partitions.hpp"

using pk::Int;
using pk::make_rat;
using pk::Rat;
using Poly = pk::Polynomial<pk::Rat>;

namespace {

Poly from_longs(std::initializer_list<long> coeffs) {
  std::vector<Rat> c;
  for (long v : coeffs) c.emplace_back(v);
  return Poly(std::move(c));
}

std::vector<Rat> rats(std::initializer_list<long> values) {
  std::vector<Rat> out;
  for (long v : values) out.emplace_back(v);
  return out;
}

pk::RegularPartitionTable synthetic_table(std::vector<long> values) {
  pk::RegularPartitionTable t;
  t.k = 2;
  t.max_n = static_cast<long>(values.size()) - 1;
  for (long v : values) t.values.emplace_back(v);
  return t;
}

}  // namespace

TEST_CASE("newton power sums of known root sets") {
  // X^2 - 1: roots +-1, so S = (2, 0, 2).
  CHECK(pk::newton_sums(from_longs({-1, 0, 1})) == rats({2, 0, 2}));
  // X^2 + 1: roots +-i, so S = (2, 0, -2).
  CHECK(pk::newton_sums(from_longs({1, 0, 1})) == rats({2, 0, -2}));
  // (1+X)^3: root -1 three times, so S_m = 3*(-1)^m.
  CHECK(pk::newton_sums(from_longs({1, 3, 3, 1})) == rats({3, -3, 3, -3, 3}));
}

TEST_CASE("newton sums basic identities") {
  const auto f = Poly(std::vector<Rat>{make_rat(5, 3), make_rat(-7, 2), Rat(2), Rat(4)});
  const auto s = pk::newton_sums(f);
  REQUIRE(s.size() == 5);  // 2*3 - 1
  CHECK(s[0] == 3);
  // S_1 = -a_{n-1}/a_n = sum of roots.
  CHECK(s[1] == -f.coeff(2) / f.coeff(3));
  // Scaling f leaves the root multiset, hence all sums, unchanged.
  CHECK(pk::newton_sums(make_rat(-3, 7) * f) == s);
  CHECK_THROWS_AS(pk::newton_sums(Poly::constant(Rat(4))), std::invalid_argument);
  CHECK_THROWS_AS(pk::newton_sums(Poly()), std::invalid_argument);
}

TEST_CASE("hankel minors") {
  CHECK(pk::hankel_minors(rats({2, 0, 2})) == rats({2, 4}));
  CHECK(pk::hankel_minors(rats({2, 0, -2})) == rats({2, -4}));
  // Triple root: rank-one moment matrix, so every 2x2-and-up minor vanishes.
  CHECK(pk::hankel_minors(rats({3, -3, 3, -3, 3})) == rats({3, 0, 0}));
  CHECK_THROWS_AS(pk::hankel_minors(rats({1, 2})), std::invalid_argument);
}

TEST_CASE("matrix decider on canonical examples") {
  const auto real2 = pk::hyperbolic_by_hankel(from_longs({-1, 0, 1}));
  CHECK(real2.hyperbolic);
  CHECK(real2.degree == 2);
  CHECK(real2.minors == rats({2, 4}));

  const auto complex2 = pk::hyperbolic_by_hankel(from_longs({1, 0, 1}));
  CHECK_FALSE(complex2.hyperbolic);

  // Repeated real roots are hyperbolic even though minors degenerate.
  const auto cube = pk::hyperbolic_by_hankel(from_longs({1, 3, 3, 1}));
  CHECK(cube.hyperbolic);
  CHECK(cube.minors == rats({3, 0, 0}));

  // First minor is always the degree.
  for (auto f : {from_longs({-1, 0, 1}), from_longs({1, 0, 1}), from_longs({1, 3, 3, 1})}) {
    CHECK(pk::hyperbolic_by_hankel(f).minors.at(0) == f.degree());
  }

  CHECK_THROWS_AS(pk::hyperbolic_by_hankel(Poly::constant(Rat(1))), std::invalid_argument);
}

TEST_CASE("sturm root counting") {
  CHECK(pk::sturm_real_root_count(from_longs({-1, 0, 1})) == 2);
  CHECK(pk::sturm_real_root_count(from_longs({1, 0, 1})) == 0);
  CHECK(pk::sturm_real_root_count(from_longs({0, -6, 0, 1})) == 3);   // X^3 - 6X
  CHECK(pk::sturm_real_root_count(from_longs({1, 3, 3, 1})) == 1);    // distinct roots only
  CHECK(pk::sturm_real_root_count(from_longs({1, 0, 0, 0, 1})) == 0); // X^4 + 1
  CHECK(pk::sturm_real_root_count(from_longs({5})) == 0);
  CHECK_THROWS_AS(pk::sturm_real_root_count(Poly()), std::invalid_argument);
}

TEST_CASE("sturm decider on canonical examples") {
  CHECK(pk::hyperbolic_by_sturm(from_longs({-1, 0, 1})));
  CHECK_FALSE(pk::hyperbolic_by_sturm(from_longs({1, 0, 1})));
  CHECK(pk::hyperbolic_by_sturm(from_longs({1, 3, 3, 1})));
  CHECK(pk::hyperbolic_by_sturm(from_longs({0, -6, 0, 1})));
  CHECK_FALSE(pk::hyperbolic_by_sturm(from_longs({1, 0, 0, 0, 1})));
  // Mixed: (X^2+1)(X-2) has one real root out of degree 3.
  CHECK_FALSE(pk::hyperbolic_by_sturm(from_longs({-2, 1, -2, 1})));
  CHECK_THROWS_AS(pk::hyperbolic_by_sturm(Poly::constant(Rat(1))), std::invalid_argument);
}

TEST_CASE("deciders agree on randomized polynomials") {
  std::mt19937_64 rng(20240817);
  auto rand_range = [&rng](long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
  };
  auto random_poly = [&](int min_deg, int max_deg) {
    const int deg = static_cast<int>(rand_range(min_deg, max_deg));
    std::vector<Rat> c(static_cast<std::size_t>(deg) + 1);
    for (auto& x : c) x = Rat(rand_range(-20, 20));
    while (pk::sgn(c.back()) == 0) c.back() = Rat(rand_range(-20, 20));
    return Poly(std::move(c));
  };
  int multiple_root_cases = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Poly f;
    if (rand_range(0, 3) == 0) {
      // Force a repeated factor: f = g^2 * h is never squarefree.
      const Poly g = random_poly(1, 2);
      const Poly h = random_poly(0, 2);
      f = g * g * h;
      if (f.degree() < 1) continue;
      ++multiple_root_cases;
    } else {
      f = random_poly(1, 6);
    }
    const bool by_matrix = pk::hyperbolic_by_hankel(f).hyperbolic;
    const bool by_sturm = pk::hyperbolic_by_sturm(f);
    INFO("f = " << f.to_string());
    REQUIRE(by_matrix == by_sturm);
  }
  CHECK(multiple_root_cases > 40);  // the degenerate branch is actually exercised
}

TEST_CASE("turan order 2 on partition tables") {
  const auto t2 = pk::compute_table_pentagonal(2, 10);
  const auto at1 = pk::turan_order2(t2, 1);
  CHECK(at1.holds);
  CHECK(at1.lhs == 1);
  CHECK(at1.rhs == 1);  // equality at m=1
  const auto at3 = pk::turan_order2(t2, 3);
  CHECK(at3.holds);
  CHECK(at3.lhs == 4);
  CHECK(at3.rhs == 2);
  const auto at2 = pk::turan_order2(t2, 2);
  CHECK_FALSE(at2.holds);
  CHECK(at2.lhs == 1);
  CHECK(at2.rhs == 2);
}

TEST_CASE("turan inequalities on synthetic tables") {
  const auto constant = synthetic_table({7, 7, 7, 7, 7, 7});
  for (long m = 1; m <= 4; ++m) {
    const auto v2 = pk::turan_order2(constant, m);
    CHECK(v2.holds);
    CHECK(v2.lhs == v2.rhs);
  }
  const auto v3 = pk::turan_order3(constant, 2);
  CHECK(v3.holds);
  CHECK(v3.lhs == 0);
  CHECK(v3.rhs == 0);

  // Geometric sequences sit exactly on both boundaries.
  const auto geometric = synthetic_table({1, 2, 4, 8, 16, 32});
  for (long m = 1; m <= 3; ++m) {
    CHECK(pk::turan_order2(geometric, m).lhs == pk::turan_order2(geometric, m).rhs);
    const auto g3 = pk::turan_order3(geometric, m);
    CHECK(g3.lhs == 0);
    CHECK(g3.rhs == 0);
    CHECK(g3.holds);
  }
}

TEST_CASE("turan range checking") {
  const auto t = pk::compute_table_pentagonal(2, 10);
  CHECK_THROWS_AS(pk::turan_order2(t, 0), std::out_of_range);
  CHECK_THROWS_AS(pk::turan_order2(t, 10), std::out_of_range);
  CHECK(pk::turan_order2(t, 9).order == 2);
  CHECK_THROWS_AS(pk::turan_order3(t, 0), std::out_of_range);
  CHECK_THROWS_AS(pk::turan_order3(t, 9), std::out_of_range);
  CHECK(pk::turan_order3(t, 8).order == 3);
}

TEST_CASE("degree-2 shifted polynomials match order-2 inequalities") {
  // The degree-2 case reduces to a discriminant sign, which is exactly
  // the order-2 inequality at the middle index.
  const auto t = pk::compute_table_pentagonal(2, 60);
  for (long n = 1; n <= 50; ++n) {
    const auto j = pk::jensen_polynomial(t, 2, n);
    CHECK(pk::hyperbolic_by_sturm(j) == pk::turan_order2(t, n + 1).holds);
  }
}

TEST_CASE("degree-3 shifted polynomials match combined inequalities") {
  const auto t = pk::compute_table_pentagonal(123, 125);
  for (long n = 1; n <= 120; ++n) {
    const auto j = pk::jensen_polynomial(t, 3, n);
    const bool combined = pk::turan_order3(t, n + 1).holds &&
                          pk::turan_order2(t, n + 1).holds &&
                          pk::turan_order2(t, n + 2).holds;
    CHECK(pk::hyperbolic_by_hankel(j).hyperbolic == combined);
  }
}

TEST_CASE("degree-3 boundary for the unrestricted sequence") {
  // p_98 agrees with unrestricted p on 0..97, covering shifts up to 94.
  const auto t = pk::compute_table_pentagonal(98, 97);
  CHECK_FALSE(pk::hyperbolic_by_hankel(pk::jensen_polynomial(t, 3, 93)).hyperbolic);
  CHECK(pk::hyperbolic_by_hankel(pk::jensen_polynomial(t, 3, 94)).hyperbolic);
  CHECK_FALSE(pk::hyperbolic_by_sturm(pk::jensen_polynomial(t, 3, 93)));
  CHECK(pk::hyperbolic_by_sturm(pk::jensen_polynomial(t, 3, 94)));
}
