#include "qloop/gf.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace qloop {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// irreducible monic polynomials used for the prime power fields, low degree
// coefficients first (constant, x, x^2, ...)
std::vector<int> field_poly(int p, int k) {
  if (p == 2 && k == 2) return {1, 1, 1};        // x^2+x+1
  if (p == 2 && k == 3) return {1, 1, 0, 1};     // x^3+x+1
  if (p == 2 && k == 4) return {1, 1, 0, 0, 1};  // x^4+x+1
  if (p == 3 && k == 2) return {1, 0, 1};        // x^2+1
  if (p == 5 && k == 2) return {2, 1, 1};        // x^2+x+2
  throw std::invalid_argument("GF: unsupported prime power");
}

}  // namespace

GF::GF(int q) : q_(q) {
  if (q < 2 || q > 64) throw std::invalid_argument("GF: order out of range");
  int p = 0, k = 0;
  for (int cand = 2; cand <= q; ++cand) {
    if (!is_prime(cand)) continue;
    int pw = cand, deg = 1;
    while (pw < q) { pw *= cand; ++deg; }
    if (pw == q) { p = cand; k = deg; break; }
  }
  if (p == 0) throw std::invalid_argument("GF: not a prime power");

  // elements are base-p digit strings encoding polynomials over F_p
  auto digits = [&](int x) {
    std::vector<int> d(k);
    for (int i = 0; i < k; ++i) { d[i] = x % p; x /= p; }
    return d;
  };
  auto encode = [&](const std::vector<int>& d) {
    int x = 0;
    for (int i = k - 1; i >= 0; --i) x = x * p + d[i];
    return x;
  };
  std::vector<int> red;
  if (k > 1) red = field_poly(p, k);

  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  for (int a = 0; a < q; ++a) {
    auto da = digits(a);
    std::vector<int> dn(k);
    for (int i = 0; i < k; ++i) dn[i] = (p - da[i]) % p;
    neg_[a] = (uint8_t)encode(dn);
    for (int b = 0; b < q; ++b) {
      auto db = digits(b);
      std::vector<int> ds(k);
      for (int i = 0; i < k; ++i) ds[i] = (da[i] + db[i]) % p;
      add_[a * q + b] = (uint8_t)encode(ds);
      // polynomial product reduced by the field polynomial
      std::vector<int> prod(2 * k - 1, 0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      for (int d = 2 * k - 2; d >= k; --d) {
        int c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (int i = 0; i < k; ++i)
          prod[d - k + i] = ((prod[d - k + i] - c * red[i]) % p + p * p) % p;
      }
      std::vector<int> dm(prod.begin(), prod.begin() + k);
      mul_[a * q + b] = (uint8_t)encode(dm);
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (mul_[a * q + b] == 1) inv_[a] = (uint8_t)b;
}

uint8_t GF::inv(uint8_t a) const {
  if (a == 0) throw std::domain_error("GF: inverse of zero");
  return inv_[a];
}

const GF& GF::get(int q) {
  static std::map<int, std::unique_ptr<GF>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, std::make_unique<GF>(q)).first;
  return *it->second;
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::mul(const GF& f, const Mat& x, const Mat& y) {
  if (x.cols() != y.rows()) throw std::invalid_argument("Mat::mul: shape mismatch");
  Mat r(x.rows(), y.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int k = 0; k < x.cols(); ++k) {
      uint8_t xv = x.at(i, k);
      if (!xv) continue;
      for (int j = 0; j < y.cols(); ++j)
        r.at(i, j) = f.add(r.at(i, j), f.mul(xv, y.at(k, j)));
    }
  return r;
}

namespace {
// reduce to RREF in place; returns pivot columns
std::vector<int> rref(const GF& f, Mat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int sel = -1;
    for (int i = row; i < m.rows(); ++i)
      if (m.at(i, col)) { sel = i; break; }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
    uint8_t pinv = f.inv(m.at(row, col));
    for (int j = 0; j < m.cols(); ++j) m.at(row, j) = f.mul(m.at(row, j), pinv);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || !m.at(i, col)) continue;
      uint8_t c = m.at(i, col);
      for (int j = 0; j < m.cols(); ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(c, m.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}
}  // namespace

int rank(const GF& f, Mat m) { return (int)rref(f, m).size(); }

Mat kernel(const GF& f, const Mat& m) {
  Mat a = m;
  std::vector<int> pivots = rref(f, a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Mat ker((int)free_cols.size(), m.cols());
  for (size_t fi = 0; fi < free_cols.size(); ++fi) {
    int fc = free_cols[fi];
    ker.at((int)fi, fc) = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      ker.at((int)fi, pivots[r]) = f.neg(a.at((int)r, fc));
  }
  return ker;
}

std::vector<uint8_t> coords_in_rowspace(const GF& f, const Mat& basis,
                                        const std::vector<uint8_t>& v) {
  // basis is assumed RREF; reduce v against it; throws if v is outside
  std::vector<uint8_t> coords(basis.rows(), 0), w = v;
  for (int r = 0; r < basis.rows(); ++r) {
    int pc = -1;
    for (int j = 0; j < basis.cols(); ++j)
      if (basis.at(r, j)) { pc = j; break; }
    if (pc < 0) continue;
    uint8_t c = f.mul(w[pc], f.inv(basis.at(r, pc)));
    coords[r] = c;
    if (c)
      for (int j = 0; j < basis.cols(); ++j) w[j] = f.sub(w[j], f.mul(c, basis.at(r, j)));
  }
  for (uint8_t x : w)
    if (x) throw std::logic_error("coords_in_rowspace: vector outside row space");
  return coords;
}

bool in_rowspace(const GF& f, const Mat& basis, const std::vector<uint8_t>& v) {
  std::vector<uint8_t> w = v;
  for (int r = 0; r < basis.rows(); ++r) {
    int pc = -1;
    for (int j = 0; j < basis.cols(); ++j)
      if (basis.at(r, j)) { pc = j; break; }
    if (pc < 0 || !w[pc]) continue;
    uint8_t c = f.mul(w[pc], f.inv(basis.at(r, pc)));
    for (int j = 0; j < basis.cols(); ++j) w[j] = f.sub(w[j], f.mul(c, basis.at(r, j)));
  }
  for (uint8_t x : w)
    if (x) return false;
  return true;
}

std::vector<Mat> all_subspaces(const GF& f, int n) {
  // enumerate RREF matrices: choose pivot columns, fill free entries
  std::vector<Mat> out;
  const int q = f.q();
  for (int k = 0; k <= n; ++k) {
    // choose pivot columns 0 <= c_1 < ... < c_k < n
    std::vector<int> piv(k);
    for (int i = 0; i < k; ++i) piv[i] = i;
    while (true) {
      // free positions: row i, column j with j > piv[i], j not a pivot column
      std::vector<std::pair<int, int>> freepos;
      std::vector<bool> is_pivot(n, false);
      for (int p : piv) is_pivot[p] = true;
      for (int i = 0; i < k; ++i)
        for (int j = piv[i] + 1; j < n; ++j)
          if (!is_pivot[j]) freepos.emplace_back(i, j);
      long total = 1;
      for (size_t t = 0; t < freepos.size(); ++t) total *= q;
      for (long code = 0; code < total; ++code) {
        Mat m(k, n);
        for (int i = 0; i < k; ++i) m.at(i, piv[i]) = 1;
        long c = code;
        for (const auto& [i, j] : freepos) {
          m.at(i, j) = (uint8_t)(c % q);
          c /= q;
        }
        out.push_back(m);
      }
      // next combination
      if (k == 0) break;
      int i = k - 1;
      while (i >= 0 && piv[i] == n - k + i) --i;
      if (i < 0) break;
      ++piv[i];
      for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace qloop
