#include "qloop/symm.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace qloop {

void Partition::normalize() {
  std::sort(p_.begin(), p_.end(), std::greater<int>());
  while (!p_.empty() && p_.back() <= 0) {
    if (p_.back() < 0) throw std::invalid_argument("Partition: negative part");
    p_.pop_back();
  }
}

int Partition::weight() const {
  int w = 0;
  for (int x : p_) w += x;
  return w;
}

Partition Partition::conjugate() const {
  std::vector<int> c;
  for (int i = 0; !p_.empty() && i < p_[0]; ++i) {
    int k = 0;
    for (int x : p_)
      if (x > i) ++k;
    c.push_back(k);
  }
  return Partition(c);
}

long Partition::n_stat() const {
  long s = 0;
  for (size_t i = 0; i < p_.size(); ++i) s += (long)i * p_[i];
  return s;
}

Partition Partition::merged(const Partition& o) const {
  std::vector<int> m = p_;
  m.insert(m.end(), o.p_.begin(), o.p_.end());
  return Partition(m);
}

std::string Partition::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < p_.size(); ++i) os << (i ? "," : "") << p_[i];
  os << ")";
  return os.str();
}

std::vector<Partition> Partition::all(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rem, int maxpart) {
    if (rem == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(rem, maxpart); p >= 1; --p) {
      cur.push_back(p);
      rec(rem - p, p);
      cur.pop_back();
    }
  };
  if (n >= 0) rec(n, n == 0 ? 1 : n);
  return out;
}

SymElem xi_gen(int l) {
  if (l < 0) throw std::invalid_argument("xi_gen: negative index");
  if (l == 0) return SymElem(Laurent(1));
  return SymElem::xi(Partition{l});
}

SymElem schur(const Partition& lambda) {
  // det over all permutations; r <= ~8 at desk scale
  const int r = lambda.length();
  if (r == 0) return SymElem(Laurent(1));
  std::vector<int> perm(r);
  for (int i = 0; i < r; ++i) perm[i] = i;
  SymElem det;
  do {
    int sign = 1;
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    std::vector<int> idx;
    bool zero = false;
    for (int i = 0; i < r; ++i) {
      int e = lambda.part(i) - i + perm[i];
      if (e < 0) { zero = true; break; }
      if (e > 0) idx.push_back(e);
    }
    if (!zero) det.add(Partition(idx), Laurent(sign));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

SymElem chi(int n) {
  if (n < 0) throw std::invalid_argument("chi: negative weight");
  // chi_0 = 1 and chi_n = -sum_{i=1..n} xi_i chi_{n-i}
  static std::vector<SymElem> memo;
  if (memo.empty()) memo.push_back(SymElem(Laurent(1)));
  while ((int)memo.size() <= n) {
    int m = (int)memo.size();
    SymElem c;
    for (int i = 1; i <= m; ++i) c -= xi_gen(i) * memo[m - i];
    memo.push_back(c);
  }
  return memo[n];
}

SymElem theta(int l) {
  if (l < 0) throw std::invalid_argument("theta: negative weight");
  SymElem t;
  for (int k = 0; k <= l; ++k) {
    SymElem term = xi_gen(l - k) * chi(k);
    t += SymExpr<Laurent>::xi(Partition{}, Laurent::v(2 * k - l)) * term;
  }
  return t;
}

SymElemQ h_generator(int l) {
  if (l < 1) throw std::invalid_argument("h_generator: l >= 1 required");
  // log(1 + X) with X = sum_{k>=1} xi_k s^k, truncated at order l
  std::vector<SymElemQ> pw(l + 1);  // X^m coefficients of s^l accumulate below
  // coefficient of s^l in X^m, via products of generators
  // simple recursion: P[m][w] = coefficient of s^w in X^m
  std::vector<std::vector<SymElemQ>> P(l + 1, std::vector<SymElemQ>(l + 1));
  P[0][0] = SymElemQ(LaurentQ(1));
  for (int m = 1; m <= l; ++m)
    for (int w = m; w <= l; ++w) {
      SymElemQ acc;
      for (int k = 1; k <= w - m + 1; ++k)
        acc += to_rational(xi_gen(k)) * P[m - 1][w - k];
      P[m][w] = acc;
    }
  SymElemQ h;
  for (int m = 1; m <= l; ++m) {
    LaurentQ c(Laurent((m % 2 == 1) ? 1 : -1), Int(m));
    SymElemQ t;
    for (const auto& [mu, x] : P[m][l].terms()) t.add(mu, x * c);
    h += t;
  }
  return h;
}

SymElemQ to_rational(const SymElem& e) {
  SymElemQ r;
  for (const auto& [m, c] : e.terms()) r.add(m, LaurentQ(c));
  return r;
}

SymElem clear_rational(const SymElemQ& e) {
  SymElem r;
  for (const auto& [m, c] : e.terms()) r.add(m, c.clear());
  return r;
}

std::vector<std::pair<Partition, Laurent>> schur_expand(const SymElem& e) {
  // s_mu = xi_mu + (lex-larger xi-monomials), by Jacobi-Trudi and the fact
  // that lex order refines dominance. Stripping the lex-smallest monomial is
  // therefore an exact triangular solve within each weight component.
  std::vector<std::pair<Partition, Laurent>> out;
  SymElem rest = e;
  while (!rest.is_zero()) {
    const auto& terms = rest.terms();
    auto best = terms.begin();
    for (auto it = terms.begin(); it != terms.end(); ++it) {
      auto key = std::make_pair(it->first.weight(), it->first.parts());
      auto bkey = std::make_pair(best->first.weight(), best->first.parts());
      if (key < bkey) best = it;
    }
    Partition mu = best->first;
    Laurent c = best->second;
    out.emplace_back(mu, c);
    SymElem s = schur(mu);
    SymElem scaled;
    for (const auto& [m, x] : s.terms()) scaled.add(m, x * c);
    rest -= scaled;
  }
  return out;
}

}  // namespace qloop
