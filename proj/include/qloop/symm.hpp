// The commutative torsion sector: partitions, the polynomial ring in the
// generators xi_1, xi_2, ... (xi_lambda multiplied by multiset union), Schur
// elements via Jacobi-Trudi, the inverse series chi, the coproduct
// coefficients theta_l, and the rational generators H_(l).
//
// Convention: xi_l plays the role of the complete homogeneous function h_l,
// so Schur elements come from det(xi_{lambda_i - i + j}).
#pragma once

#include <vector>

#include "qloop/laurent.hpp"

namespace qloop {

// weakly decreasing positive parts
class Partition {
public:
  Partition() = default;
  Partition(std::initializer_list<int> parts) : p_(parts) { normalize(); }
  explicit Partition(std::vector<int> parts) : p_(std::move(parts)) { normalize(); }

  const std::vector<int>& parts() const { return p_; }
  int weight() const;
  int length() const { return (int)p_.size(); }
  bool empty() const { return p_.empty(); }
  int part(int i) const { return i < (int)p_.size() ? p_[i] : 0; }
  Partition conjugate() const;
  // n(lambda) = sum (i-1) lambda_i
  long n_stat() const;
  // multiset union
  Partition merged(const Partition& o) const;

  auto operator<=>(const Partition& o) const = default;

  std::string str() const;

  static std::vector<Partition> all(int n);  // all partitions of n

private:
  void normalize();
  std::vector<int> p_;
};

template <class Coeff>
class SymExpr {
public:
  SymExpr() = default;
  SymExpr(Coeff c) { add(Partition{}, std::move(c)); }
  static SymExpr xi(const Partition& mu, Coeff c = Coeff(1)) {
    SymExpr e;
    e.add(mu, std::move(c));
    return e;
  }

  const std::map<Partition, Coeff>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  Coeff coeff(const Partition& mu) const {
    auto it = t_.find(mu);
    return it == t_.end() ? Coeff(0) : it->second;
  }

  void add(const Partition& mu, Coeff c) {
    if (c == Coeff(0)) return;
    auto it = t_.find(mu);
    if (it == t_.end()) {
      t_.emplace(mu, std::move(c));
    } else {
      it->second += c;
      if (it->second == Coeff(0)) t_.erase(it);
    }
  }

  SymExpr& operator+=(const SymExpr& o) {
    for (const auto& [m, c] : o.t_) add(m, c);
    return *this;
  }
  SymExpr& operator-=(const SymExpr& o) {
    for (const auto& [m, c] : o.t_) add(m, Coeff(0) - c);
    return *this;
  }
  friend SymExpr operator+(SymExpr a, const SymExpr& b) { a += b; return a; }
  friend SymExpr operator-(SymExpr a, const SymExpr& b) { a -= b; return a; }
  // xi_mu * xi_nu = xi_{mu union nu}, bilinear
  friend SymExpr operator*(const SymExpr& a, const SymExpr& b) {
    SymExpr r;
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) r.add(ma.merged(mb), ca * cb);
    return r;
  }
  SymExpr& operator*=(const SymExpr& o) { *this = *this * o; return *this; }
  friend SymExpr operator*(const Coeff& c, const SymExpr& a) {
    SymExpr r;
    for (const auto& [m, x] : a.t_) r.add(m, c * x);
    return r;
  }
  bool operator==(const SymExpr& o) const { return t_ == o.t_; }

  std::string str() const {
    if (t_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : t_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")*xi" + m.str();
    }
    return s;
  }

private:
  std::map<Partition, Coeff> t_;
};

using SymElem = SymExpr<Laurent>;
using SymElemQ = SymExpr<LaurentQ>;

// single generator xi_l (l >= 1); xi_0 = 1
SymElem xi_gen(int l);

// Schur element s_lambda = det(xi_{lambda_i - i + j}) (Jacobi-Trudi)
SymElem schur(const Partition& lambda);

// chi_n: series inverse of 1 + sum xi_l s^l; chi_0 = 1, sum_{i+j=l} xi_i chi_j = 0
SymElem chi(int n);

// theta_l = sum_{k=0..l} v^{2k-l} xi_{l-k} chi_k
SymElem theta(int l);

// H_(l): coefficient of s^l in log(1 + sum xi_l s^l), rational coefficients
SymElemQ h_generator(int l);

SymElemQ to_rational(const SymElem& e);
SymElem clear_rational(const SymElemQ& e);  // throws if any denominator remains

// expand e, given in the xi (complete homogeneous) basis, in the Schur basis;
// returns pairs (lambda, coefficient)
std::vector<std::pair<Partition, Laurent>> schur_expand(const SymElem& e);

}  // namespace qloop
