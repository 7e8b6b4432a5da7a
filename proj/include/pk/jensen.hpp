#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pk/asymptotics.hpp"
#include "pk/bigfloat.hpp"
#include "pk/partitions.hpp"
#include "pk/polynomial.hpp"
#include "pk/rational.hpp"

namespace pk {

// J^{d,n}(X) = sum_{j=0}^{d} C(d,j) * p_k(n+j) * X^j.  Integer
// coefficients; degree exactly d because the table entries are positive.
inline Polynomial<Rat> jensen_polynomial(const RegularPartitionTable& table, int d, long n) {
  if (d < 1) throw std::invalid_argument("jensen_polynomial: d must be >= 1");
  if (n < 0) throw std::invalid_argument("jensen_polynomial: n must be >= 0");
  if (n + d > table.max_n) {
    throw std::out_of_range("jensen_polynomial: n + d = " + std::to_string(n + d) +
                            " exceeds table max_n = " + std::to_string(table.max_n));
  }
  std::vector<Rat> coeffs(static_cast<std::size_t>(d) + 1);
  for (int j = 0; j <= d; ++j) {
    coeffs[static_cast<std::size_t>(j)] =
        Rat(binomial(static_cast<unsigned long>(d), static_cast<unsigned long>(j)) *
            table.at(n + j));
  }
  return Polynomial<Rat>(std::move(coeffs));
}

// Hermite polynomials in the normalization generated by e^{-t^2 + Xt}:
// H_0 = 1, H_1 = X, H_{d+1} = X*H_d - 2d*H_{d-1}.
// (Expanding the generating function to order t^4 confirms the
// recurrence: H_2 = X^2 - 2, H_3 = X^3 - 6X, H_4 = X^4 - 12X^2 + 12.)
inline Polynomial<Rat> hermite_polynomial(int d) {
  if (d < 0) throw std::invalid_argument("hermite_polynomial: d must be >= 0");
  Polynomial<Rat> prev = Polynomial<Rat>::constant(Rat(1));
  if (d == 0) return prev;
  Polynomial<Rat> cur = Polynomial<Rat>::identity();
  const Polynomial<Rat> x = Polynomial<Rat>::identity();
  for (int m = 1; m < d; ++m) {
    Polynomial<Rat> next = x * cur - Rat(2 * m) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// Dense polynomial with coefficients held at a stated binary precision.
struct FloatPolynomial {
  std::vector<BigFloat> coeffs;  // index = monomial degree
  mpfr_prec_t precision = 128;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  // Horner evaluation at the stated precision.
  BigFloat eval(const BigFloat& x) const {
    BigFloat acc(std::max(precision, x.precision()));
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      acc = acc * x + coeffs[i];
    }
    return acc;
  }
};

// Renormalized Jensen polynomial
//   (delta(n)^{-d} / p_k(n)) * J^{d,n}((delta(n)*X - 1) / exp(A(n))).
// A(n) and delta(n) are evaluated in floating point at the working
// precision, converted to rationals exactly, and the affine
// composition plus scaling run in exact rational arithmetic; each
// output coefficient is then rounded once.  Floating error is thereby
// confined to two well-understood roundings.
inline FloatPolynomial renormalized_jensen(const RegularPartitionTable& table, int d, long n,
                                           const AsymptoticParams& params,
                                           mpfr_prec_t precision) {
  if (table.k != params.k) throw std::invalid_argument("renormalized_jensen: table k != params k");
  if (n < 1) throw std::invalid_argument("renormalized_jensen: n must be >= 1");
  if (d < 0) throw std::invalid_argument("renormalized_jensen: d must be >= 0");
  if (n + d > table.max_n) throw std::out_of_range("renormalized_jensen: n + d exceeds table");

  FloatPolynomial out;
  out.precision = precision;
  if (d == 0) {
    // J^{0,n} = p_k(n) and delta^0 = 1, so the normalization is exactly 1.
    out.coeffs.push_back(BigFloat::from(1L, precision));
    return out;
  }
  params.validate();

  AsymptoticParams local = params;
  local.precision = precision;
  const Rat delta = renorm_delta(n, local).to_rational();
  const Rat growth = exp(growth_slope(n, local).round_to(precision + detail::guard_bits))
                         .round_to(precision)
                         .to_rational();

  const Polynomial<Rat> j = jensen_polynomial(table, d, n);
  // argument (delta*X - 1) / e^{A} = (delta/e^{A}) X + (-1/e^{A})
  const Polynomial<Rat> composed = j.compose_linear(delta / growth, Rat(-1) / growth);
  const Rat scale = rat_pow(delta, -static_cast<long>(d)) / Rat(table.at(n));
  const Polynomial<Rat> scaled = scale * composed;

  out.coeffs.reserve(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) {
    out.coeffs.push_back(BigFloat::from(scaled.coeff(i), precision));
  }
  return out;
}

// Max of |a(x) - b(x)| over an equispaced grid on [lo, hi]; the
// convergence metric for comparing against a Hermite target.
inline BigFloat sup_distance(const FloatPolynomial& a, const Polynomial<Rat>& b, const Rat& lo,
                             const Rat& hi, int grid) {
  if (!(lo < hi)) throw std::invalid_argument("sup_distance: need lo < hi");
  if (grid < 2) throw std::invalid_argument("sup_distance: grid must be >= 2");
  const mpfr_prec_t prec = a.precision;
  BigFloat best(prec);
  const Rat span = hi - lo;
  for (int i = 0; i < grid; ++i) {
    const Rat x = lo + span * make_rat(i, grid - 1);
    const BigFloat fx = a.eval(BigFloat::from(x, prec));
    const BigFloat gx = BigFloat::from(b.eval(x), prec);
    const BigFloat dist = abs(fx - gx);
    if (dist > best) best = dist;
  }
  return best;
}

// Coefficient-wise max deviation between a float polynomial and an
// exact target; the second convergence metric.
inline BigFloat coefficient_deviation(const FloatPolynomial& a, const Polynomial<Rat>& b) {
  const mpfr_prec_t prec = a.precision;
  BigFloat best(prec);
  const int top = std::max(a.degree(), b.degree());
  for (int i = 0; i <= top; ++i) {
    const BigFloat ai = i <= a.degree() ? a.coeffs[static_cast<std::size_t>(i)] : BigFloat(prec);
    const BigFloat dev = abs(ai - BigFloat::from(b.coeff(i), prec));
    if (dev > best) best = dev;
  }
  return best;
}

}  // namespace pk
