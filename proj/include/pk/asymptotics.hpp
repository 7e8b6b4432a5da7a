#pragma once

#include <mutex>
#include <stdexcept>
#include <string>

#include "pk/bigfloat.hpp"
#include "pk/partitions.hpp"
#include "pk/rational.hpp"

namespace pk {

// Settings shared by the asymptotic-side computations.  growth_modulus
// is the constant (k-1)/(24k) that steers every formula here; d is the
// Jensen degree the sequences are built for (it sets the upper limit
// floor(3d/4) of the correction sum in growth_slope).
struct AsymptoticParams {
  long k = 2;
  int d = 1;
  int delta_truncation = 40;   // upper limit R of the r-sum in renorm_delta
  mpfr_prec_t precision = 128;

  Rat growth_modulus() const { return make_rat(k - 1, 24 * k); }

  // Argument shift used by the Hagis-style main term: n + k*(k-1)/(24k).
  Rat shifted_index(long n) const { return Rat(n) + make_rat(k - 1, 24); }

  int slope_sum_limit() const { return (3 * d) / 4; }

  void validate() const {
    if (k < 2) throw std::invalid_argument("AsymptoticParams: k must be >= 2");
    if (d < 1) throw std::invalid_argument("AsymptoticParams: d must be >= 1");
    if (delta_truncation < 2) {
      throw std::invalid_argument("AsymptoticParams: delta_truncation must be >= 2");
    }
    if (precision < 8) throw std::invalid_argument("AsymptoticParams: precision must be >= 8");
  }
};

namespace detail {

constexpr long bessel_branch_switch = 40;  // series below, asymptotic above
constexpr mpfr_prec_t guard_bits = 64;

// Ascending series I_1(x) = sum_{m>=0} (x/2)^{2m+1} / (m! (m+1)!).
// All terms positive; stop once a term no longer moves the sum at the
// working precision.
inline BigFloat bessel_i1_series(const BigFloat& x, mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + guard_bits;
  const BigFloat half = x.round_to(wp) / BigFloat::from(2L, wp);
  const BigFloat half_sq = half * half;
  BigFloat term = half;
  BigFloat sum = term;
  const BigFloat one = BigFloat::from(1L, wp);
  BigFloat eps = one;
  for (mpfr_prec_t i = 0; i < wp; ++i) eps = eps / BigFloat::from(2L, wp);
  for (long m = 1; m < 100000; ++m) {
    term = term * half_sq / BigFloat::from(m * (m + 1), wp);
    sum += term;
    if (term < eps * sum) return sum.round_to(prec);
  }
  throw std::logic_error("bessel_i1_series: no convergence");
}

// Exponential asymptotic expansion
//   I_1(x) ~ e^x / sqrt(2*pi*x) * (1 - 3/(8x) - 15/(128x^2) - ...),
// term recurrence t_m = t_{m-1} * ((2m-1)^2 - 4) / (8 m x).  The series
// diverges eventually; truncate at the smallest term, which bounds the
// error by roughly exp(-2x) relatively.
inline BigFloat bessel_i1_asymptotic(const BigFloat& x, mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + guard_bits;
  const BigFloat xw = x.round_to(wp);
  BigFloat term = BigFloat::from(1L, wp);
  BigFloat sum = term;
  BigFloat prev_mag = abs(term);
  const BigFloat one = BigFloat::from(1L, wp);
  BigFloat eps = one;
  for (mpfr_prec_t i = 0; i < wp; ++i) eps = eps / BigFloat::from(2L, wp);
  for (long m = 1; m < 100000; ++m) {
    const long num = (2 * m - 1) * (2 * m - 1) - 4;
    term = term * BigFloat::from(num, wp) / (BigFloat::from(8 * m, wp) * xw);
    const BigFloat mag = abs(term);
    if (mag >= prev_mag) break;  // divergent tail reached; stop before it
    sum += term;
    prev_mag = mag;
    if (mag < eps * abs(sum)) break;
  }
  const BigFloat two_pi_x = BigFloat::from(2L, wp) * BigFloat::pi(wp) * xw;
  const BigFloat prefactor = exp(xw) / sqrt(two_pi_x);
  return (prefactor * sum).round_to(prec);
}

// Both branches must agree where their domains overlap; disagreement
// means a truncation rule is broken, which should stop everything.
inline void bessel_selftest() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    const mpfr_prec_t prec = 128;
    const BigFloat tol = BigFloat::from(1e-10, prec);
    for (long xi = 20; xi <= 60; xi += 5) {
      const BigFloat x = BigFloat::from(xi, prec);
      const BigFloat s = bessel_i1_series(x, prec);
      const BigFloat a = bessel_i1_asymptotic(x, prec);
      if (!(abs(s - a) / s < tol)) {
        throw std::logic_error("bessel_i1: branch self-test failed at x=" + std::to_string(xi));
      }
    }
  });
}

}  // namespace detail

// Modified Bessel function of the first kind, order 1.
inline BigFloat bessel_i1(const BigFloat& x, mpfr_prec_t prec) {
  if (x.sign() < 0) throw std::invalid_argument("bessel_i1: x must be >= 0");
  if (x.is_zero()) return BigFloat(prec);
  detail::bessel_selftest();
  if (x < BigFloat::from(detail::bessel_branch_switch, x.precision())) {
    return detail::bessel_i1_series(x, prec);
  }
  return detail::bessel_i1_asymptotic(x, prec);
}

// Main term of the classical asymptotic for p_k(n):
//   2*pi * sqrt(m / (k*(n + k*m))) * I_1(4*pi * sqrt(m*(n + k*m))),
// with m = (k-1)/(24k).  The remainder it drops is exponentially
// smaller, so the relative error decays like exp(-c*sqrt(n)).
inline BigFloat hagis_estimate(long k, long n, mpfr_prec_t prec) {
  if (k < 2) throw std::invalid_argument("hagis_estimate: k must be >= 2");
  if (n < 1) throw std::invalid_argument("hagis_estimate: n must be >= 1");
  const mpfr_prec_t wp = prec + detail::guard_bits;
  const Rat m = make_rat(k - 1, 24 * k);
  const Rat mu = Rat(n) + make_rat(k - 1, 24);  // n + k*m
  const BigFloat pi = BigFloat::pi(wp);
  const BigFloat arg =
      BigFloat::from(4L, wp) * pi * sqrt(BigFloat::from(m * mu, wp));
  const BigFloat prefactor =
      BigFloat::from(2L, wp) * pi * sqrt(BigFloat::from(m / (Rat(k) * mu), wp));
  return (prefactor * bessel_i1(arg, wp)).round_to(prec);
}

namespace detail {

// Unrounded cores, shared so derived quantities round only once.

inline BigFloat growth_slope_impl(long n, const AsymptoticParams& p, mpfr_prec_t wp) {
  // 2*pi*sqrt(m/n) + (3/4) * sum_{r=1}^{floor(3d/4)} (-1)^r / (r n^r);
  // the correction sum is exact rational arithmetic.
  Rat corr(0);
  for (int r = 1; r <= p.slope_sum_limit(); ++r) {
    Rat t = Rat(1) / (Rat(r) * rat_pow(Rat(n), r));
    if (r % 2 == 1) t = -t;
    corr += t;
  }
  corr *= Rat(3, 4);
  const BigFloat main =
      BigFloat::from(2L, wp) * BigFloat::pi(wp) * sqrt(BigFloat::from(p.growth_modulus() / Rat(n), wp));
  return main + BigFloat::from(corr, wp);
}

inline BigFloat renorm_delta_sq_impl(long n, const AsymptoticParams& p, mpfr_prec_t wp) {
  // delta(n)^2 = 4*pi*sqrt(m*n) * sum_{r=2}^{R} (-C(1/2,r)) n^{-r}.
  // The inner sum is exact and must be positive; its terms alternate
  // with decreasing magnitude for n >= 1.
  Rat inner(0);
  for (int r = 2; r <= p.delta_truncation; ++r) {
    inner += -binomial_half(static_cast<unsigned long>(r)) / rat_pow(Rat(n), r);
  }
  if (sgn(inner) <= 0) {
    throw std::logic_error("renorm_delta_sq: truncated sum non-positive at n=" + std::to_string(n));
  }
  const BigFloat scale = BigFloat::from(4L, wp) * BigFloat::pi(wp) *
                         sqrt(BigFloat::from(p.growth_modulus() * Rat(n), wp));
  return scale * BigFloat::from(inner, wp);
}

}  // namespace detail

// The linear coefficient A(n) of the quadratic model for
// log(p_k(n+j)/p_k(n)); tends to 0 like n^{-1/2}.
inline BigFloat growth_slope(long n, const AsymptoticParams& p) {
  p.validate();
  if (n < 1) throw std::invalid_argument("growth_slope: n must be >= 1");
  return detail::growth_slope_impl(n, p, p.precision + detail::guard_bits).round_to(p.precision);
}

// Square of the renormalization scale delta(n); leading behavior
// (pi/2) sqrt(m) n^{-3/2}.
inline BigFloat renorm_delta_sq(long n, const AsymptoticParams& p) {
  p.validate();
  if (n < 1) throw std::invalid_argument("renorm_delta_sq: n must be >= 1");
  return detail::renorm_delta_sq_impl(n, p, p.precision + detail::guard_bits).round_to(p.precision);
}

inline BigFloat renorm_delta(long n, const AsymptoticParams& p) {
  p.validate();
  if (n < 1) throw std::invalid_argument("renorm_delta: n must be >= 1");
  return sqrt(detail::renorm_delta_sq_impl(n, p, p.precision + detail::guard_bits))
      .round_to(p.precision);
}

// One probe of the quadratic log-quotient model.  lhs comes from exact
// table entries, so the residual reflects the model alone, not table
// noise.
struct LogQuotientResidual {
  long n = 0;
  int j = 0;
  BigFloat lhs;         // log(p_k(n+j)/p_k(n))
  BigFloat model;       // A(n)*j - delta(n)^2*j^2
  BigFloat residual;    // lhs - model
  BigFloat normalized;  // residual / delta(n)^d
};

inline LogQuotientResidual log_quotient_residual(const RegularPartitionTable& table, long n,
                                                 int j, const AsymptoticParams& p) {
  p.validate();
  if (table.k != p.k) throw std::invalid_argument("log_quotient_residual: table k != params k");
  if (n < 1) throw std::invalid_argument("log_quotient_residual: n must be >= 1");
  if (j < 0 || j > p.d) throw std::invalid_argument("log_quotient_residual: need 0 <= j <= d");
  if (n + j > table.max_n) throw std::out_of_range("log_quotient_residual: n + j exceeds table");
  const mpfr_prec_t wp = p.precision + detail::guard_bits;

  Rat ratio(table.at(n + j));
  ratio /= Rat(table.at(n));
  ratio.canonicalize();
  const BigFloat lhs = j == 0 ? BigFloat(wp) : log(BigFloat::from(ratio, wp));

  const BigFloat a = detail::growth_slope_impl(n, p, wp);
  const BigFloat dsq = detail::renorm_delta_sq_impl(n, p, wp);
  const BigFloat jf = BigFloat::from(static_cast<long>(j), wp);
  const BigFloat model = a * jf - dsq * jf * jf;
  const BigFloat residual = lhs - model;
  const BigFloat normalized = residual / pow_si(sqrt(dsq), p.d);

  LogQuotientResidual out;
  out.n = n;
  out.j = j;
  out.lhs = lhs.round_to(p.precision);
  out.model = model.round_to(p.precision);
  out.residual = residual.round_to(p.precision);
  out.normalized = normalized.round_to(p.precision);
  return out;
}

}  // namespace pk
