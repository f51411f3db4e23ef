#include "qloop/laurent.hpp"

#include <sstream>

namespace qloop {

Laurent Laurent::term(int e, Int coeff) {
  Laurent r;
  if (coeff != 0) r.c_[e] = std::move(coeff);
  return r;
}

Int Laurent::coeff(int e) const {
  auto it = c_.find(e);
  return it == c_.end() ? Int(0) : it->second;
}

int Laurent::min_exp() const {
  if (c_.empty()) throw std::domain_error("min_exp of zero");
  return c_.begin()->first;
}

int Laurent::max_exp() const {
  if (c_.empty()) throw std::domain_error("max_exp of zero");
  return c_.rbegin()->first;
}

Laurent& Laurent::operator+=(const Laurent& o) {
  for (const auto& [e, a] : o.c_) {
    auto it = c_.find(e);
    if (it == c_.end()) {
      c_[e] = a;
    } else {
      it->second += a;
      if (it->second == 0) c_.erase(it);
    }
  }
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  for (const auto& [e, a] : o.c_) {
    auto it = c_.find(e);
    if (it == c_.end()) {
      c_[e] = -a;
    } else {
      it->second -= a;
      if (it->second == 0) c_.erase(it);
    }
  }
  return *this;
}

Laurent Laurent::operator-() const {
  Laurent r;
  for (const auto& [e, a] : c_) r.c_[e] = -a;
  return r;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent r;
  for (const auto& [ea, ca] : a.c_)
    for (const auto& [eb, cb] : b.c_) {
      Int& slot = r.c_[ea + eb];
      slot += ca * cb;
    }
  for (auto it = r.c_.begin(); it != r.c_.end();)
    it = (it->second == 0) ? r.c_.erase(it) : std::next(it);
  return r;
}

Laurent Laurent::bar() const {
  Laurent r;
  for (const auto& [e, a] : c_) r.c_[-e] = a;
  return r;
}

Laurent Laurent::shifted(int e) const {
  Laurent r;
  for (const auto& [f, a] : c_) r.c_[f + e] = a;
  return r;
}

Int Laurent::at_one() const {
  Int s = 0;
  for (const auto& [e, a] : c_) s += a;
  return s;
}

bool Laurent::nonneg_coeffs() const {
  for (const auto& [e, a] : c_)
    if (a < 0) return false;
  return true;
}

bool Laurent::symmetric() const {
  for (const auto& [e, a] : c_)
    if (coeff(-e) != a) return false;
  return true;
}

std::optional<Laurent> Laurent::div_exact(const Laurent& a, const Laurent& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return Laurent();
  // long division from the top exponent
  Laurent rem = a, quot;
  const int bm = b.max_exp();
  const Int& blead = b.c_.rbegin()->second;
  while (!rem.is_zero()) {
    const int e = rem.max_exp() - bm;
    Int q = rem.c_.rbegin()->second / blead;
    if (q * blead != rem.c_.rbegin()->second) return std::nullopt;
    Laurent t = Laurent::term(e, q);
    quot += t;
    rem -= t * b;
    if (!rem.is_zero() && rem.max_exp() - bm >= e) return std::nullopt;  // no progress
  }
  return quot;
}

std::string Laurent::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // print from highest exponent down
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    const auto& [e, a] = *it;
    Int abs = a < 0 ? Int(-a) : a;
    if (first) {
      if (a < 0) os << "-";
      first = false;
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    if (abs != 1 || e == 0) os << abs.get_str();
    if (e != 0) {
      if (abs != 1) os << "*";
      os << "v";
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

Laurent qint(int l) {
  if (l < 0) throw std::invalid_argument("qint: negative argument");
  // v^{l-1} + v^{l-3} + ... + v^{1-l}
  Laurent r;
  for (int e = l - 1; e >= 1 - l; e -= 2) r += Laurent::v(e);
  return r;
}

Laurent qfact(int l) {
  if (l < 0) throw std::invalid_argument("qfact: negative argument");
  Laurent r(1);
  for (int i = 2; i <= l; ++i) r *= qint(i);
  return r;
}

Laurent qbinom(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("qbinom: bad arguments");
  auto q = Laurent::div_exact(qfact(n), qfact(k) * qfact(n - k));
  if (!q) throw std::logic_error("qbinom: division failed");
  return *q;
}

LaurentQ::LaurentQ(const Laurent& n, const Int& d) : num_(n), den_(d) {
  if (den_ == 0) throw std::invalid_argument("LaurentQ: zero denominator");
  if (den_ < 0) { num_ = -num_; den_ = -den_; }
  reduce();
}

void LaurentQ::reduce() {
  if (num_.is_zero()) { den_ = 1; return; }
  Int g = den_;
  for (const auto& [e, a] : num_.terms()) {
    g = gcd(g, a);
    if (g == 1) return;
  }
  if (g != 1) {
    Laurent n;
    for (const auto& [e, a] : num_.terms()) n += Laurent::term(e, a / g);
    num_ = n;
    den_ /= g;
  }
}

Laurent LaurentQ::clear() const {
  if (den_ != 1) throw std::domain_error("LaurentQ::clear: denominator " + den_.get_str());
  return num_;
}

LaurentQ& LaurentQ::operator+=(const LaurentQ& o) {
  num_ = num_ * Laurent(o.den_) + o.num_ * Laurent(den_);
  den_ *= o.den_;
  reduce();
  return *this;
}

LaurentQ& LaurentQ::operator-=(const LaurentQ& o) {
  num_ = num_ * Laurent(o.den_) - o.num_ * Laurent(den_);
  den_ *= o.den_;
  reduce();
  return *this;
}

LaurentQ operator*(const LaurentQ& a, const LaurentQ& b) {
  return LaurentQ(a.num_ * b.num_, a.den_ * b.den_);
}

std::string LaurentQ::str() const {
  if (den_ == 1) return num_.str();
  return "(" + num_.str() + ")/" + den_.get_str();
}

}  // namespace qloop
