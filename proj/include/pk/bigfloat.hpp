#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pk/rational.hpp"

namespace pk {

// RAII wrapper around mpfr_t with per-value precision.  All binary
// operations produce a result at the max precision of the operands and
// round once (MPFR_RNDN), so error accounting stays local.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 128) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }

  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }

  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }

  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }

  BigFloat& operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }

  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat from(double x, mpfr_prec_t prec) {
    BigFloat out(prec);
    mpfr_set_d(out.v_, x, MPFR_RNDN);
    return out;
  }

  static BigFloat from(long x, mpfr_prec_t prec) {
    BigFloat out(prec);
    mpfr_set_si(out.v_, x, MPFR_RNDN);
    return out;
  }

  static BigFloat from(const Int& x, mpfr_prec_t prec) {
    BigFloat out(prec);
    mpfr_set_z(out.v_, x.get_mpz_t(), MPFR_RNDN);
    return out;
  }

  static BigFloat from(const Rat& x, mpfr_prec_t prec) {
    BigFloat out(prec);
    mpfr_set_q(out.v_, x.get_mpq_t(), MPFR_RNDN);
    return out;
  }

  static BigFloat from_string(const std::string& s, mpfr_prec_t prec) {
    BigFloat out(prec);
    if (mpfr_set_str(out.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
      throw std::invalid_argument("BigFloat::from_string: cannot parse '" + s + "'");
    }
    return out;
  }

  static BigFloat pi(mpfr_prec_t prec) {
    BigFloat out(prec);
    mpfr_const_pi(out.v_, MPFR_RNDN);
    return out;
  }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  // Exact: every finite mpfr value is m * 2^e with integer m.
  Rat to_rational() const {
    if (!mpfr_number_p(v_)) throw std::domain_error("to_rational: non-finite value");
    if (mpfr_zero_p(v_)) return Rat(0);
    Int m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    Rat out(m);
    if (e >= 0) {
      Int p;
      mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
      out *= Rat(p);
    } else {
      Int p;
      mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
      out /= Rat(p);
    }
    out.canonicalize();
    return out;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  std::string to_string(int digits = 30) const {
    char buf[256];
    mpfr_snprintf(buf, sizeof(buf), "%.*Rg", digits, v_);
    return std::string(buf);
  }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  BigFloat round_to(mpfr_prec_t prec) const {
    BigFloat out(prec);
    mpfr_set(out.v_, v_, MPFR_RNDN);
    return out;
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat out(std::max(a.precision(), b.precision()));
    mpfr_add(out.v_, a.v_, b.v_, MPFR_RNDN);
    return out;
  }

  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat out(std::max(a.precision(), b.precision()));
    mpfr_sub(out.v_, a.v_, b.v_, MPFR_RNDN);
    return out;
  }

  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat out(std::max(a.precision(), b.precision()));
    mpfr_mul(out.v_, a.v_, b.v_, MPFR_RNDN);
    return out;
  }

  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat out(std::max(a.precision(), b.precision()));
    mpfr_div(out.v_, a.v_, b.v_, MPFR_RNDN);
    return out;
  }

  friend BigFloat operator-(const BigFloat& a) {
    BigFloat out(a.precision());
    mpfr_neg(out.v_, a.v_, MPFR_RNDN);
    return out;
  }

  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
  BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }

  friend BigFloat sqrt(const BigFloat& x) {
    BigFloat out(x.precision());
    mpfr_sqrt(out.v_, x.v_, MPFR_RNDN);
    return out;
  }

  friend BigFloat exp(const BigFloat& x) {
    BigFloat out(x.precision());
    mpfr_exp(out.v_, x.v_, MPFR_RNDN);
    return out;
  }

  friend BigFloat log(const BigFloat& x) {
    BigFloat out(x.precision());
    mpfr_log(out.v_, x.v_, MPFR_RNDN);
    return out;
  }

  friend BigFloat abs(const BigFloat& x) {
    BigFloat out(x.precision());
    mpfr_abs(out.v_, x.v_, MPFR_RNDN);
    return out;
  }

  friend BigFloat pow_si(const BigFloat& x, long e) {
    BigFloat out(x.precision());
    mpfr_pow_si(out.v_, x.v_, e, MPFR_RNDN);
    return out;
  }

  const mpfr_t& raw() const { return v_; }
  mpfr_t& raw() { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace pk
