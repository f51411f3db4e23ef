// Exact Laurent polynomial arithmetic over the integers in the variable v,
// plus quantum integers/factorials/binomials and the bar involution v -> 1/v.
#pragma once

#include <gmpxx.h>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace qloop {

using Int = mpz_class;

class Laurent {
public:
  Laurent() = default;
  Laurent(long n) { if (n != 0) c_[0] = n; }
  explicit Laurent(const Int& n) { if (n != 0) c_[0] = n; }

  // v^e
  static Laurent v(int e = 1) { return term(e, 1); }
  static Laurent term(int e, Int coeff);

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0); }

  // stored coefficients are never zero
  const std::map<int, Int>& terms() const { return c_; }
  Int coeff(int e) const;
  int min_exp() const;  // throws on zero
  int max_exp() const;

  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  Laurent operator-() const;
  friend Laurent operator+(Laurent a, const Laurent& b) { a += b; return a; }
  friend Laurent operator-(Laurent a, const Laurent& b) { a -= b; return a; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  Laurent& operator*=(const Laurent& o) { *this = *this * o; return *this; }
  bool operator==(const Laurent& o) const { return c_ == o.c_; }
  bool operator!=(const Laurent& o) const { return c_ != o.c_; }
  // arbitrary total order, for use as a map key
  bool operator<(const Laurent& o) const { return c_ < o.c_; }

  // v -> v^{-1}
  Laurent bar() const;
  // multiply by v^e
  Laurent shifted(int e) const;

  Int at_one() const;  // substitute v = 1
  // all coefficients nonnegative
  bool nonneg_coeffs() const;
  // palindromic: coeff(e) == coeff(-e) for all e
  bool symmetric() const;

  // exact division; nullopt if b does not divide a in Z[v,v^-1]
  static std::optional<Laurent> div_exact(const Laurent& a, const Laurent& b);

  std::string str() const;

private:
  std::map<int, Int> c_;
};

// [l] = (v^l - v^-l)/(v - v^-1)
Laurent qint(int l);
// [l]! = [1][2]...[l]
Laurent qfact(int l);
// Gaussian binomial [n choose k]
Laurent qbinom(int n, int k);

// Laurent polynomial with an integer denominator, reduced. Used only inside
// derivations (logarithms of xi-series, divided differences); results that
// reach a public boundary must clear to Laurent.
class LaurentQ {
public:
  LaurentQ() : den_(1) {}
  LaurentQ(const Laurent& n) : num_(n), den_(1) {}
  LaurentQ(long n) : num_(n), den_(1) {}
  LaurentQ(const Laurent& n, const Int& d);

  const Laurent& num() const { return num_; }
  const Int& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integral() const { return den_ == 1; }
  // throws if den != 1
  Laurent clear() const;

  LaurentQ& operator+=(const LaurentQ& o);
  LaurentQ& operator-=(const LaurentQ& o);
  friend LaurentQ operator+(LaurentQ a, const LaurentQ& b) { a += b; return a; }
  friend LaurentQ operator-(LaurentQ a, const LaurentQ& b) { a -= b; return a; }
  friend LaurentQ operator*(const LaurentQ& a, const LaurentQ& b);
  LaurentQ& operator*=(const LaurentQ& o) { *this = *this * o; return *this; }
  LaurentQ div_by_int(const Int& k) const { return LaurentQ(num_, den_ * k); }
  bool operator==(const LaurentQ& o) const { return num_ == o.num_ && den_ == o.den_; }

  std::string str() const;

private:
  void reduce();
  Laurent num_;
  Int den_;  // > 0
};

}  // namespace qloop
