#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pk {

// Dense univariate polynomial over a commutative ring T (field T for the
// division-based operations).  Invariant: coeffs_ is empty (zero polynomial)
// or its last entry is nonzero.  degree() of the zero polynomial is -1.
template <typename T>
class Polynomial {
 public:
  Polynomial() = default;

  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial constant(const T& c) { return Polynomial(std::vector<T>{c}); }

  static Polynomial identity() { return Polynomial(std::vector<T>{T(0), T(1)}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  bool is_zero() const { return coeffs_.empty(); }

  // Coefficient of X^i; zero outside the stored range.
  T coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return T(0);
    return coeffs_[static_cast<std::size_t>(i)];
  }

  const T& leading() const {
    if (is_zero()) throw std::domain_error("leading(): zero polynomial");
    return coeffs_.back();
  }

  const std::vector<T>& coeffs() const { return coeffs_; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> out(std::max(a.coeffs_.size(), b.coeffs_.size()), T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<T> out(std::max(a.coeffs_.size(), b.coeffs_.size()), T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] -= b.coeffs_[i];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator-(const Polynomial& a) {
    std::vector<T> out = a.coeffs_;
    for (auto& c : out) c = -c;
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<T> out(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        out[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(const T& s, const Polynomial& a) {
    std::vector<T> out = a.coeffs_;
    for (auto& c : out) c *= s;
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(const Polynomial& a, const T& s) { return s * a; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return Polynomial();
    std::vector<T> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
      out[i - 1] = coeffs_[i] * T(static_cast<long>(i));
    }
    return Polynomial(std::move(out));
  }

  T eval(const T& x) const {
    T acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      acc = acc * x + coeffs_[i];
    }
    return acc;
  }

  // P(aX + b), computed by Horner with polynomial argument.
  Polynomial compose_linear(const T& a, const T& b) const {
    Polynomial arg(std::vector<T>{b, a});
    Polynomial acc;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      acc = acc * arg + Polynomial::constant(coeffs_[i]);
    }
    return acc;
  }

  // Euclidean division; requires T to be a field and b nonzero.
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("divmod: division by zero polynomial");
    Polynomial rem = a;
    std::vector<T> q(a.coeffs_.size() > b.coeffs_.size() ? a.coeffs_.size() - b.coeffs_.size() + 1 : 1,
                     T(0));
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
      const int shift = rem.degree() - b.degree();
      const T factor = rem.leading() / b.leading();
      q[static_cast<std::size_t>(shift)] += factor;
      std::vector<T> sub(static_cast<std::size_t>(shift), T(0));
      sub.reserve(sub.size() + b.coeffs_.size());
      for (const auto& c : b.coeffs_) sub.push_back(c * factor);
      rem = rem - Polynomial(std::move(sub));
    }
    return {Polynomial(std::move(q)), rem};
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      if (coeffs_[i] == T(0)) continue;
      if (!first) os << " + ";
      os << "(" << coeffs_[i] << ")";
      if (i == 1) os << "*X";
      if (i > 1) os << "*X^" << i;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == T(0)) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

// Monic gcd over a field; gcd(0, 0) = 0.
template <typename T>
Polynomial<T> gcd(Polynomial<T> a, Polynomial<T> b) {
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    (void)q;
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  return (T(1) / a.leading()) * a;
}

// f / gcd(f, f'): same distinct roots, all simple.
template <typename T>
Polynomial<T> squarefree_part(const Polynomial<T>& f) {
  if (f.degree() <= 0) return f;
  const Polynomial<T> g = gcd(f, f.derivative());
  if (g.degree() <= 0) return f;
  auto [q, r] = divmod(f, g);
  if (!r.is_zero()) throw std::logic_error("squarefree_part: inexact division");
  return q;
}

}  // namespace pk
