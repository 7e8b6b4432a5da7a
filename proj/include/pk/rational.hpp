#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace pk {

using Int = mpz_class;
using Rat = mpq_class;

// mpq_class(num, den) does not reduce to lowest terms on its own, and
// GMP arithmetic assumes canonical operands; route all two-argument
// rational construction through here.
inline Rat make_rat(long num, long den) {
  Rat out(num, den);
  out.canonicalize();
  return out;
}

// C(n, r) as an exact integer.
inline Int binomial(unsigned long n, unsigned long r) {
  Int out;
  mpz_bin_uiui(out.get_mpz_t(), n, r);
  return out;
}

// Generalized binomial coefficient C(1/2, r) = prod_{i<r} (1/2 - i) / r!.
// C(1/2,0)=1, C(1/2,1)=1/2, C(1/2,2)=-1/8, C(1/2,3)=1/16, C(1/2,4)=-5/128.
inline Rat binomial_half(unsigned long r) {
  Rat num(1);
  for (unsigned long i = 0; i < r; ++i) {
    num *= Rat(1, 2) - Rat(i);
  }
  Int fact;
  mpz_fac_ui(fact.get_mpz_t(), r);
  Rat out = num / Rat(fact);
  out.canonicalize();
  return out;
}

inline Rat rat_pow(const Rat& base, long e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("rat_pow: zero to negative power");
    return Rat(1) / rat_pow(base, -e);
  }
  Rat out(1);
  Rat b = base;
  unsigned long u = static_cast<unsigned long>(e);
  while (u != 0) {
    if (u & 1u) out *= b;
    b *= b;
    u >>= 1u;
  }
  out.canonicalize();
  return out;
}

// Canonical "p/q" rendering; integers render without the "/q" part.
inline std::string rat_to_string(const Rat& x) {
  Rat c = x;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
  Rat out;
  if (out.set_str(s, 10) != 0) {
    throw std::invalid_argument("rat_from_string: cannot parse '" + s + "'");
  }
  if (mpz_sgn(out.get_den().get_mpz_t()) == 0) {
    throw std::invalid_argument("rat_from_string: zero denominator in '" + s + "'");
  }
  out.canonicalize();
  return out;
}

inline int sgn(const Rat& x) { return mpq_sgn(x.get_mpq_t()); }
inline int sgn(const Int& x) { return mpz_sgn(x.get_mpz_t()); }

}  // namespace pk
