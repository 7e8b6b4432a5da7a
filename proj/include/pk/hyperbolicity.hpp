#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "pk/partitions.hpp"
#include "pk/polynomial.hpp"
#include "pk/rational.hpp"

namespace pk {

// Raised when two independent deciders disagree on the same input;
// always a bug, never a data property.
struct CrossCheckError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Power sums S_0..S_{2n-2} of the roots of f (with multiplicity),
// from the coefficients alone via Newton's identities on the monic
// normalization a_j = c_j / c_n:
//   S_0 = n,
//   S_m = -( m*a_{n-m} + sum_{i=1}^{m-1} a_{n-i} * S_{m-i} ),
// where a_j = 0 for j < 0.  2n-1 sums is exactly what the n x n Hankel
// matrix of f needs.
inline std::vector<Rat> newton_sums(const Polynomial<Rat>& f) {
  const int n = f.degree();
  if (n < 1) throw std::invalid_argument("newton_sums: degree must be >= 1");
  const int count = 2 * n - 1;
  const Rat lead = f.leading();
  auto a = [&](int j) -> Rat { return j >= 0 ? f.coeff(j) / lead : Rat(0); };
  std::vector<Rat> s(static_cast<std::size_t>(count));
  s[0] = Rat(n);
  for (int m = 1; m < count; ++m) {
    Rat acc = Rat(m) * a(n - m);
    for (int i = 1; i < m; ++i) {
      acc += a(n - i) * s[static_cast<std::size_t>(m - i)];
    }
    s[static_cast<std::size_t>(m)] = -acc;
  }
  return s;
}

namespace detail {

// Exact determinant by fraction Gaussian elimination with pivoting.
inline Rat determinant(std::vector<std::vector<Rat>> m) {
  const std::size_t n = m.size();
  Rat det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(m[piv][col]) == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(m[r][col]) == 0) continue;
      const Rat factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) {
        m[r][c] -= factor * m[col][c];
      }
    }
  }
  det.canonicalize();
  return det;
}

// Exact positive-semidefiniteness of a symmetric rational matrix by
// repeated Schur complements:
//   * any negative diagonal entry refutes PSD;
//   * a zero diagonal entry forces its whole row to vanish (else the
//     2x2 principal submatrix [[0, b], [b, d]] has determinant -b^2 < 0);
//   * rows passing that test are dropped, then one positive pivot is
//     eliminated.  Empty matrix is PSD.
inline bool psd_exact(std::vector<std::vector<Rat>> m) {
  std::vector<std::size_t> live(m.size());
  std::iota(live.begin(), live.end(), std::size_t{0});
  while (!live.empty()) {
    for (std::size_t i : live) {
      if (sgn(m[i][i]) < 0) return false;
    }
    bool dropped = false;
    for (std::size_t idx = 0; idx < live.size();) {
      const std::size_t i = live[idx];
      if (sgn(m[i][i]) == 0) {
        for (std::size_t j : live) {
          if (sgn(m[i][j]) != 0) return false;
        }
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(idx));
        dropped = true;
      } else {
        ++idx;
      }
    }
    if (live.empty()) break;
    if (dropped) continue;
    const std::size_t p = live.front();
    live.erase(live.begin());
    for (std::size_t r : live) {
      const Rat factor = m[r][p] / m[p][p];
      for (std::size_t c : live) {
        m[r][c] -= factor * m[p][c];
      }
    }
  }
  return true;
}

inline std::vector<std::vector<Rat>> hankel_matrix(const std::vector<Rat>& s, std::size_t n) {
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = s[i + j];
    }
  }
  return m;
}

}  // namespace detail

// Leading principal minors of the n x n Hankel matrix (S_{i+j}) built
// from power sums S_0..S_{2n-2}.
inline std::vector<Rat> hankel_minors(const std::vector<Rat>& s) {
  if (s.size() % 2 == 0) {
    throw std::invalid_argument("hankel_minors: need an odd number of power sums (2n-1)");
  }
  const std::size_t n = (s.size() + 1) / 2;
  const auto m = detail::hankel_matrix(s, n);
  std::vector<Rat> minors(n);
  for (std::size_t size = 1; size <= n; ++size) {
    std::vector<std::vector<Rat>> sub(size, std::vector<Rat>(size));
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) sub[i][j] = m[i][j];
    }
    minors[size - 1] = detail::determinant(std::move(sub));
  }
  return minors;
}

// Everything the matrix-based decider looked at, kept exact so a
// failing case can be audited after the fact.  A zero minor alone is
// not a refutation; only the full PSD test decides.
struct HankelReport {
  int degree = 0;
  std::vector<Rat> newton_sums;  // S_0 .. S_{2*degree-2}
  std::vector<Rat> minors;       // leading principal minors, sizes 1..degree
  bool hyperbolic = false;
};

// A real polynomial has all-real roots iff the Hankel matrix of its
// root power sums is positive semidefinite.
inline HankelReport hyperbolic_by_hankel(const Polynomial<Rat>& f) {
  const int n = f.degree();
  if (n < 1) throw std::invalid_argument("hyperbolic_by_hankel: degree must be >= 1");
  HankelReport rep;
  rep.degree = n;
  rep.newton_sums = newton_sums(f);
  rep.minors = hankel_minors(rep.newton_sums);
  rep.hyperbolic = detail::psd_exact(detail::hankel_matrix(rep.newton_sums, static_cast<std::size_t>(n)));
  return rep;
}

namespace detail {

// Sturm chain of a squarefree polynomial: p0 = g, p1 = g', then
// p_{i+1} = -rem(p_{i-1}, p_i), each term rescaled by a positive
// constant (1/|leading|) to tame coefficient growth.  Positive scaling
// preserves every sign evaluation, so root counting is unaffected.
inline std::vector<Polynomial<Rat>> sturm_chain(const Polynomial<Rat>& g) {
  std::vector<Polynomial<Rat>> chain;
  chain.push_back(g);
  Polynomial<Rat> d = g.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d);
  while (chain.back().degree() > 0) {
    auto [q, r] = divmod(chain[chain.size() - 2], chain.back());
    (void)q;
    if (r.is_zero()) break;  // cannot happen for squarefree input
    Rat scale = r.leading();
    if (sgn(scale) < 0) scale = -scale;
    chain.push_back((Rat(1) / scale) * (-r));
  }
  return chain;
}

inline int sign_at_infinity(const Polynomial<Rat>& p, bool positive_end) {
  if (p.is_zero()) return 0;
  int s = sgn(p.leading());
  if (!positive_end && p.degree() % 2 == 1) s = -s;
  return s;
}

inline int sign_variations(const std::vector<int>& signs) {
  int count = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

}  // namespace detail

// Number of distinct real roots of f, by Sturm's theorem on the
// squarefree part f / gcd(f, f').
inline int sturm_real_root_count(const Polynomial<Rat>& f) {
  if (f.is_zero()) throw std::invalid_argument("sturm_real_root_count: zero polynomial");
  if (f.degree() == 0) return 0;
  const Polynomial<Rat> g = squarefree_part(f);
  if (g.degree() == 0) return 0;
  const auto chain = detail::sturm_chain(g);
  std::vector<int> at_minus, at_plus;
  at_minus.reserve(chain.size());
  at_plus.reserve(chain.size());
  for (const auto& p : chain) {
    at_minus.push_back(detail::sign_at_infinity(p, false));
    at_plus.push_back(detail::sign_at_infinity(p, true));
  }
  return detail::sign_variations(at_minus) - detail::sign_variations(at_plus);
}

// f is hyperbolic iff its squarefree part has as many distinct real
// roots as its degree.
inline bool hyperbolic_by_sturm(const Polynomial<Rat>& f) {
  if (f.degree() < 1) throw std::invalid_argument("hyperbolic_by_sturm: degree must be >= 1");
  const Polynomial<Rat> g = squarefree_part(f);
  return sturm_real_root_count(g) == g.degree();
}

// One evaluated inequality instance, kept exact for reporting.
struct TuranVerdict {
  int order = 0;
  long m = 0;
  Int lhs;
  Int rhs;
  bool holds = false;
};

// Order 2 (log-concavity at m):  p(m)^2 >= p(m-1) * p(m+1).
inline TuranVerdict turan_order2(const RegularPartitionTable& table, long m) {
  if (m < 1 || m + 1 > table.max_n) {
    throw std::out_of_range("turan_order2: need 1 <= m <= max_n-1");
  }
  TuranVerdict v;
  v.order = 2;
  v.m = m;
  v.lhs = table.at(m) * table.at(m);
  v.rhs = table.at(m - 1) * table.at(m + 1);
  v.holds = v.lhs >= v.rhs;
  return v;
}

// Order 3 at m:
//   4 (p(m)^2 - p(m-1) p(m+1)) (p(m+1)^2 - p(m) p(m+2))
//     >= ( p(m) p(m+1) - p(m-1) p(m+2) )^2.
inline TuranVerdict turan_order3(const RegularPartitionTable& table, long m) {
  if (m < 1 || m + 2 > table.max_n) {
    throw std::out_of_range("turan_order3: need 1 <= m <= max_n-2");
  }
  const Int& a = table.at(m - 1);
  const Int& b = table.at(m);
  const Int& c = table.at(m + 1);
  const Int& d = table.at(m + 2);
  TuranVerdict v;
  v.order = 3;
  v.m = m;
  v.lhs = 4 * (b * b - a * c) * (c * c - b * d);
  v.rhs = (b * c - a * d) * (b * c - a * d);
  v.holds = v.lhs >= v.rhs;
  return v;
}

}  // namespace pk
