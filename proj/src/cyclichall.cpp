#include "qloop/cyclichall.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace qloop {

int CDim::total() const { return std::accumulate(dims.begin(), dims.end(), 0); }

CDim& CDim::operator+=(const CDim& o) {
  if (dims.size() != o.dims.size()) throw std::invalid_argument("CDim: size mismatch");
  for (size_t i = 0; i < dims.size(); ++i) dims[i] += o.dims[i];
  return *this;
}

std::string CDim::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  os << ")";
  return os.str();
}

Multisegment Multisegment::segment(int p, int i, int l, int m) {
  Multisegment s{p, {}};
  s.add(i, l, m);
  return s;
}

Multisegment& Multisegment::add(int i, int l, int m) {
  if (l < 1 || m < 0) throw std::invalid_argument("Multisegment: bad segment");
  i = ((i % p) + p) % p;
  if (m > 0) mult[{i, l}] += m;
  return *this;
}

CDim Multisegment::dim() const {
  CDim d{std::vector<int>(p, 0)};
  for (const auto& [seg, m] : mult) {
    auto [i, l] = seg;
    for (int k = 0; k < l; ++k) d.dims[((i - k) % p + p) % p] += m;
  }
  return d;
}

std::string Multisegment::str() const {
  if (mult.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [seg, m] : mult) {
    if (!first) os << "+";
    first = false;
    if (m != 1) os << m << "*";
    os << "[" << seg.first << ";" << seg.second << "]";
  }
  return os.str();
}

std::vector<Multisegment> multisegments_of_dim(const CDim& d) {
  const int p = d.p();
  std::vector<std::pair<int, int>> segs;
  for (int i = 0; i < p; ++i)
    for (int l = 1; l <= d.total(); ++l) segs.push_back({i, l});
  std::vector<Multisegment> out;
  Multisegment cur = Multisegment::zero(p);
  std::function<void(size_t, CDim)> rec = [&](size_t idx, CDim rem) {
    if (rem.total() == 0) {
      out.push_back(cur);
      return;
    }
    if (idx >= segs.size()) return;
    auto [i, l] = segs[idx];
    CDim seg_dim = Multisegment::segment(p, i, l).dim();
    int maxm = rem.total();
    for (int v = 0; v < p; ++v)
      if (seg_dim.dims[v] > 0) maxm = std::min(maxm, rem.dims[v] / seg_dim.dims[v]);
    for (int m = maxm; m >= 0; --m) {
      CDim r2 = rem;
      for (int v = 0; v < p; ++v) r2.dims[v] -= m * seg_dim.dims[v];
      if (m > 0) cur.mult[{i, l}] = m;
      rec(idx + 1, r2);
      cur.mult.erase({i, l});
    }
  };
  rec(0, d);
  std::sort(out.begin(), out.end());
  return out;
}

bool aperiodic(const Multisegment& m) {
  int maxl = 0;
  for (const auto& [seg, c] : m.mult) maxl = std::max(maxl, seg.second);
  for (int t = 1; t <= maxl; ++t) {
    bool some_vertex_zero = false;
    for (int i = 0; i < m.p && !some_vertex_zero; ++i) {
      auto it = m.mult.find({i, t});
      if (it == m.mult.end() || it->second == 0) some_vertex_zero = true;
    }
    if (!some_vertex_zero) return false;
  }
  return true;
}

Multisegment rotated(const Multisegment& m, int shift) {
  Multisegment r = Multisegment::zero(m.p);
  for (const auto& [seg, c] : m.mult) r.add(seg.first + shift, seg.second, c);
  return r;
}

bool NilRep::nilpotent() const {
  const GF& f = GF::get(q);
  int total = std::accumulate(dims.begin(), dims.end(), 0);
  for (int start = 0; start < p; ++start) {
    Mat c = Mat::identity(dims[start]);
    int v = start;
    for (int s = 0; s < p * total; ++s) {
      c = Mat::mul(f, x[v], c);
      v = ((v - 1) % p + p) % p;
      if (c.rows() == 0 || c.cols() == 0) break;
    }
    for (int i = 0; i < c.rows(); ++i)
      for (int j = 0; j < c.cols(); ++j)
        if (c.at(i, j)) return false;
  }
  return true;
}

Multisegment orbit_of(const NilRep& r) {
  if (!r.nilpotent()) throw std::invalid_argument("orbit_of: representation is not nilpotent");
  const GF& f = GF::get(r.q);
  const int p = r.p;
  const int L = std::accumulate(r.dims.begin(), r.dims.end(), 0);
  // d[i][k] = dim Ker (x_{i-k+1} ... x_{i-1} x_i)
  std::vector<std::vector<int>> d(p, std::vector<int>(L + 2, 0));
  for (int i = 0; i < p; ++i) {
    Mat comp = Mat::identity(r.dims[i]);
    int target = i;
    for (int k = 1; k <= L + 1; ++k) {
      comp = Mat::mul(f, r.x[target], comp);
      target = ((target - 1) % p + p) % p;
      d[i][k] = r.dims[i] - rank(f, comp);
    }
  }
  Multisegment m = Multisegment::zero(p);
  for (int i = 0; i < p; ++i)
    for (int l = 1; l <= L; ++l) {
      int v = d[i][l] - d[i][l - 1] + d[(i + 1) % p][l] - d[(i + 1) % p][l + 1];
      if (v < 0) throw std::logic_error("orbit_of: negative multiplicity");
      if (v > 0) m.add(i, l, v);
    }
  return m;
}

NilRep representative(int p, int q, const Multisegment& m) {
  if (m.p != p) throw std::invalid_argument("representative: p mismatch");
  CDim d = m.dim();
  NilRep r;
  r.p = p;
  r.q = q;
  r.dims = d.dims;
  std::vector<int> used(p, 0);
  r.x.resize(p);
  for (int i = 0; i < p; ++i) r.x[i] = Mat(d.dims[((i - 1) % p + p) % p], d.dims[i]);
  for (const auto& [seg, mm] : m.mult) {
    auto [top, len] = seg;
    for (int copy = 0; copy < mm; ++copy) {
      int prev_slot = -1;
      for (int k = 0; k < len; ++k) {
        int v = ((top - k) % p + p) % p;
        int slot = used[v]++;
        if (k > 0) {
          int vprev = ((top - k + 1) % p + p) % p;  // x_{vprev} : V_{vprev} -> V_v
          r.x[vprev].at(slot, prev_slot) = 1;
        }
        prev_slot = slot;
      }
    }
  }
  return r;
}

void HallElem::add(const Multisegment& m, const Laurent& c) {
  if (c.is_zero()) return;
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

Laurent HallElem::coeff(const Multisegment& m) const {
  auto it = terms.find(m);
  return it == terms.end() ? Laurent() : it->second;
}

HallElem& HallElem::operator+=(const HallElem& o) {
  for (const auto& [m, c] : o.terms) add(m, c);
  return *this;
}

HallElem& HallElem::operator-=(const HallElem& o) {
  for (const auto& [m, c] : o.terms) add(m, -c);
  return *this;
}

HallElem operator*(const Laurent& c, HallElem e) {
  std::map<Multisegment, Laurent> out;
  for (const auto& [m, x] : e.terms) {
    Laurent y = c * x;
    if (!y.is_zero()) out.emplace(m, y);
  }
  e.terms = std::move(out);
  return e;
}

std::string HallElem::str() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")*1{" + m.str() + "}";
  }
  return s;
}

void HallElemQ::add(const Multisegment& m, const LaurentQ& c) {
  if (c.is_zero()) return;
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

HallElemQ& HallElemQ::operator+=(const HallElemQ& o) {
  for (const auto& [m, c] : o.terms) add(m, c);
  return *this;
}

Laurent qpoly_to_laurent(const QPoly& f) {
  Laurent r;
  for (const auto& [k, c] : f) r += Laurent::term(-2 * k, c);
  return r;
}

Int qpoly_eval(const QPoly& f, long q) {
  Int r = 0, qq = q;
  for (const auto& [k, c] : f) {
    Int pw = 1;
    for (int i = 0; i < k; ++i) pw *= qq;
    r += c * pw;
  }
  return r;
}

namespace {

// exact Lagrange interpolation; throws if the result is not an integer
// polynomial
QPoly interpolate(const std::vector<std::pair<long, Int>>& samples, const char* what) {
  const int n = (int)samples.size();
  std::vector<mpq_class> coeffs(n, 0);
  for (int i = 0; i < n; ++i) {
    std::vector<mpq_class> basis(n, 0);
    basis[0] = 1;
    int deg = 0;
    mpq_class denom = 1;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int k = deg; k >= 0; --k) {
        basis[k + 1] += basis[k];
        basis[k] *= mpq_class(-samples[j].first);
      }
      ++deg;
      denom *= mpq_class(samples[i].first - samples[j].first);
    }
    mpq_class scale = mpq_class(samples[i].second) / denom;
    for (int k = 0; k <= deg; ++k) coeffs[k] += basis[k] * scale;
  }
  QPoly poly;
  for (int k = 0; k < n; ++k) {
    coeffs[k].canonicalize();
    if (coeffs[k] == 0) continue;
    if (coeffs[k].get_den() != 1)
      throw std::runtime_error(std::string(what) + ": non-integral interpolation");
    poly[k] = coeffs[k].get_num();
  }
  return poly;
}

}  // namespace

HallAlgebra::HallAlgebra(int p, std::vector<int> primes, int check_prime)
    : p_(p), primes_(std::move(primes)), check_prime_(check_prime) {
  if (p < 1) throw std::invalid_argument("HallAlgebra: p >= 1 required");
  std::sort(primes_.begin(), primes_.end());
}

long HallAlgebra::twist_exp(const CDim& a, const CDim& b) {
  long s = 0;
  const int p = a.p();
  for (int i = 0; i < p; ++i) s += (long)a.dims[i] * b.dims[i] - (long)a.dims[i] * b.at(i + 1);
  return s;
}

const std::map<std::pair<Multisegment, Multisegment>, long>& HallAlgebra::sweep(
    const Multisegment& whole, int q) {
  auto key = std::make_pair(whole, q);
  auto it = sweep_cache_.find(key);
  if (it != sweep_cache_.end()) return it->second;

  const GF& f = GF::get(q);
  NilRep rep = representative(p_, q, whole);
  std::vector<std::vector<Mat>> subs(p_);
  for (int i = 0; i < p_; ++i) subs[i] = all_subspaces(f, rep.dims[i]);

  // pairwise stability tables: ok[i][ki][kprev] = x_i(U) subset Uprev
  std::vector<std::vector<std::vector<char>>> ok(p_);
  for (int i = 0; i < p_; ++i) {
    int ip = ((i - 1) % p_ + p_) % p_;
    ok[i].assign(subs[i].size(), std::vector<char>(subs[ip].size(), 0));
    // images of basis rows under x_i
    for (size_t ki = 0; ki < subs[i].size(); ++ki) {
      const Mat& U = subs[i][ki];
      std::vector<std::vector<uint8_t>> img(U.rows());
      for (int r = 0; r < U.rows(); ++r) {
        std::vector<uint8_t> v(rep.dims[ip], 0);
        for (int c = 0; c < U.cols(); ++c) {
          uint8_t uc = U.at(r, c);
          if (!uc) continue;
          for (int rr = 0; rr < rep.x[i].rows(); ++rr)
            v[rr] = f.add(v[rr], f.mul(uc, rep.x[i].at(rr, c)));
        }
        img[r] = std::move(v);
      }
      for (size_t kp = 0; kp < subs[ip].size(); ++kp) {
        bool stable = true;
        for (int r = 0; r < U.rows() && stable; ++r)
          if (!in_rowspace(f, subs[ip][kp], img[r])) stable = false;
        ok[i][ki][kp] = stable ? 1 : 0;
      }
    }
  }

  std::map<std::pair<Multisegment, Multisegment>, long> counts;
  std::vector<size_t> idx(p_, 0);
  while (true) {
    bool stable = true;
    for (int i = 0; i < p_ && stable; ++i) {
      int ip = ((i - 1) % p_ + p_) % p_;
      if (!ok[i][idx[i]][idx[ip]]) stable = false;
    }
    if (stable) {
      NilRep sub, quot;
      sub.p = quot.p = p_;
      sub.q = quot.q = q;
      sub.dims.resize(p_);
      quot.dims.resize(p_);
      sub.x.resize(p_);
      quot.x.resize(p_);
      std::vector<std::vector<int>> nonpiv(p_);
      for (int i = 0; i < p_; ++i) {
        const Mat& U = subs[i][idx[i]];
        std::vector<bool> is_piv(rep.dims[i], false);
        for (int r = 0; r < U.rows(); ++r)
          for (int j = 0; j < U.cols(); ++j)
            if (U.at(r, j)) { is_piv[j] = true; break; }
        for (int j = 0; j < rep.dims[i]; ++j)
          if (!is_piv[j]) nonpiv[i].push_back(j);
        sub.dims[i] = U.rows();
        quot.dims[i] = (int)nonpiv[i].size();
      }
      for (int i = 0; i < p_; ++i) {
        int ip = ((i - 1) % p_ + p_) % p_;
        const Mat& U = subs[i][idx[i]];
        const Mat& Uprev = subs[ip][idx[ip]];
        sub.x[i] = Mat(sub.dims[ip], sub.dims[i]);
        for (int r = 0; r < U.rows(); ++r) {
          std::vector<uint8_t> v(rep.dims[ip], 0);
          for (int c = 0; c < U.cols(); ++c) {
            uint8_t uc = U.at(r, c);
            if (!uc) continue;
            for (int rr = 0; rr < rep.x[i].rows(); ++rr)
              v[rr] = f.add(v[rr], f.mul(uc, rep.x[i].at(rr, c)));
          }
          auto coords = coords_in_rowspace(f, Uprev, v);
          for (size_t k = 0; k < coords.size(); ++k) sub.x[i].at((int)k, r) = coords[k];
        }
        quot.x[i] = Mat(quot.dims[ip], quot.dims[i]);
        for (size_t jc = 0; jc < nonpiv[i].size(); ++jc) {
          std::vector<uint8_t> v(rep.dims[ip], 0);
          for (int rr = 0; rr < rep.x[i].rows(); ++rr) v[rr] = rep.x[i].at(rr, nonpiv[i][jc]);
          for (int r = 0; r < Uprev.rows(); ++r) {
            int pc = -1;
            for (int j = 0; j < Uprev.cols(); ++j)
              if (Uprev.at(r, j)) { pc = j; break; }
            if (pc < 0 || !v[pc]) continue;
            uint8_t c = f.mul(v[pc], f.inv(Uprev.at(r, pc)));
            for (int j = 0; j < Uprev.cols(); ++j) v[j] = f.sub(v[j], f.mul(c, Uprev.at(r, j)));
          }
          for (size_t k = 0; k < nonpiv[ip].size(); ++k)
            quot.x[i].at((int)k, (int)jc) = v[nonpiv[ip][k]];
        }
      }
      counts[{orbit_of(sub), orbit_of(quot)}] += 1;
    }
    int i = 0;
    while (i < p_) {
      if (++idx[i] < subs[i].size()) break;
      idx[i] = 0;
      ++i;
    }
    if (i == p_) break;
  }
  return sweep_cache_.emplace(key, std::move(counts)).first->second;
}

int HallAlgebra::hom_dim(const Multisegment& a, const Multisegment& b) {
  auto key = std::make_pair(a, b);
  auto it = hom_cache_.find(key);
  if (it != hom_cache_.end()) return it->second;
  const int q = 2;  // the dimension is field independent
  const GF& f = GF::get(q);
  NilRep A = representative(p_, q, a), B = representative(p_, q, b);
  std::vector<int> offset(p_ + 1, 0);
  for (int i = 0; i < p_; ++i) offset[i + 1] = offset[i] + B.dims[i] * A.dims[i];
  int ncols = offset[p_];
  std::vector<std::vector<uint8_t>> rows;
  for (int i = 0; i < p_; ++i) {
    int ip = ((i - 1) % p_ + p_) % p_;
    for (int r = 0; r < B.dims[ip]; ++r)
      for (int c = 0; c < A.dims[i]; ++c) {
        std::vector<uint8_t> row(ncols, 0);
        for (int k = 0; k < B.dims[i]; ++k) {
          uint8_t v = B.x[i].at(r, k);
          if (v)
            row[offset[i] + k * A.dims[i] + c] = f.add(row[offset[i] + k * A.dims[i] + c], v);
        }
        for (int k = 0; k < A.dims[ip]; ++k) {
          uint8_t v = A.x[i].at(k, c);
          if (v)
            row[offset[ip] + r * A.dims[ip] + k] =
                f.sub(row[offset[ip] + r * A.dims[ip] + k], v);
        }
        rows.push_back(std::move(row));
      }
  }
  Mat m((int)rows.size(), ncols);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < ncols; ++c) m.at((int)r, c) = rows[r][c];
  int dim = ncols - rank(f, m);
  hom_cache_.emplace(key, dim);
  return dim;
}

long HallAlgebra::euler_chi(const CDim& a, const CDim& b) {
  long s = 0;
  for (int i = 0; i < p_; ++i) s += (long)a.dims[i] * b.dims[i] - (long)a.dims[i] * b.at(i - 1);
  return s;
}

int HallAlgebra::ext_dim(const Multisegment& a, const Multisegment& b) {
  long chi = euler_chi(a.dim(), b.dim());
  int ext = hom_dim(a, b) - (int)chi;
  if (ext < 0) throw std::logic_error("ext_dim: negative");
  return ext;
}

std::vector<int> HallAlgebra::sample_points(int count) {
  static const std::vector<int> pool = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25};
  std::vector<int> pts;
  for (int q : primes_)
    if (q != check_prime_) pts.push_back(q);
  for (int q : pool) {
    if ((int)pts.size() >= count) break;
    if (q == check_prime_) continue;
    if (std::find(pts.begin(), pts.end(), q) == pts.end()) pts.push_back(q);
  }
  if ((int)pts.size() < count)
    throw std::runtime_error("structure_poly: not enough sample fields for the degree bound");
  pts.resize(count);
  return pts;
}

QPoly HallAlgebra::structure_poly(const Multisegment& quot, const Multisegment& sub,
                                  const Multisegment& whole) {
  {
    CDim sum = quot.dim();
    sum += sub.dim();
    if (!(sum == whole.dim())) throw std::invalid_argument("structure_poly: dimension mismatch");
  }
  auto key = std::make_tuple(quot, sub, whole);
  auto it = poly_cache_.find(key);
  if (it != poly_cache_.end()) return it->second;

  int degree_bound = std::max(ext_dim(quot, sub), ext_dim(sub, quot));
  std::vector<int> pts = sample_points(degree_bound + 1);

  std::vector<std::pair<long, Int>> samples;
  for (int q : pts) {
    const auto& table = sweep(whole, q);
    auto f = table.find({sub, quot});
    samples.emplace_back(q, f == table.end() ? Int(0) : Int(f->second));
  }
  QPoly poly = interpolate(samples, "structure_poly");
  {
    const auto& table = sweep(whole, check_prime_);
    auto f = table.find({sub, quot});
    Int expect = f == table.end() ? Int(0) : Int(f->second);
    if (qpoly_eval(poly, check_prime_) != expect)
      throw std::runtime_error("structure_poly: interpolation inconsistency at the check prime");
  }
  poly_cache_.emplace(key, poly);
  return poly;
}

HallElem HallAlgebra::product(const HallElem& f, const HallElem& g) {
  if (f.p != p_ || g.p != p_) throw std::invalid_argument("product: wrong p");
  HallElem out;
  out.p = p_;
  if (f.terms.empty() || g.terms.empty()) {
    out.deg = CDim{std::vector<int>(p_, 0)};
    return out;
  }
  CDim df = f.deg, dg = g.deg;
  CDim dw = df;
  dw += dg;
  out.deg = dw;
  long tw = convention.twist_left_first ? twist_exp(df, dg) : twist_exp(dg, df);
  Laurent twist = Laurent::v((int)-tw);

  for (const auto& whole : multisegments_of_dim(dw)) {
    Laurent acc;
    for (const auto& [mf, cf] : f.terms)
      for (const auto& [mg, cg] : g.terms) {
        const Multisegment& quot = convention.left_eats_quotient ? mf : mg;
        const Multisegment& sub = convention.left_eats_quotient ? mg : mf;
        QPoly poly = structure_poly(quot, sub, whole);
        if (poly.empty()) continue;
        acc += cf * cg * qpoly_to_laurent(poly);
      }
    out.add(whole, twist * acc);
  }
  return out;
}

HallElemQ HallAlgebra::product(const HallElemQ& f, const HallElemQ& g) {
  HallElemQ out;
  out.p = p_;
  out.deg = f.deg;
  out.deg += g.deg;
  for (const auto& [mf, cf] : f.terms)
    for (const auto& [mg, cg] : g.terms) {
      HallElem a{p_, mf.dim(), {{mf, Laurent(1)}}};
      HallElem b{p_, mg.dim(), {{mg, Laurent(1)}}};
      HallElem ab = product(a, b);
      for (const auto& [m, c] : ab.terms) out.add(m, cf * cg * LaurentQ(c));
    }
  return out;
}

std::map<std::pair<Multisegment, Multisegment>, Laurent> HallAlgebra::coproduct_component(
    const HallElem& f, const CDim& dquot, const CDim& dsub) {
  CDim total = dquot;
  total += dsub;
  if (!(total == f.deg)) throw std::invalid_argument("coproduct_component: dimension mismatch");
  long tw = twist_exp(dsub, dquot);  // v^{{d', d''}}, d' the subobject dimension
  long bdim = 0;
  for (int i = 0; i < p_; ++i) bdim += (long)dsub.at(i - 1) * dquot.dims[i];
  std::vector<int> pts = sample_points((int)bdim + 1);

  // histogram at one field: (quot orbit, sub orbit) -> assembled orbit -> count
  auto run = [&](int q) {
    std::map<std::pair<Multisegment, Multisegment>, std::map<Multisegment, long>> hist;
    for (const auto& msub : multisegments_of_dim(dsub))
      for (const auto& mquot : multisegments_of_dim(dquot)) {
        NilRep S = representative(p_, q, msub), Q = representative(p_, q, mquot);
        long count_total = 1;
        for (int i = 0; i < p_; ++i)
          for (int t = 0; t < dsub.at(i - 1) * dquot.dims[i]; ++t) count_total *= q;
        NilRep big;
        big.p = p_;
        big.q = q;
        big.dims.resize(p_);
        big.x.resize(p_);
        for (int i = 0; i < p_; ++i) big.dims[i] = dsub.dims[i] + dquot.dims[i];
        for (long code = 0; code < count_total; ++code) {
          long rem = code;
          for (int i = 0; i < p_; ++i) {
            int ip = ((i - 1) % p_ + p_) % p_;
            Mat x(big.dims[ip], big.dims[i]);
            for (int r = 0; r < S.x[i].rows(); ++r)
              for (int cc = 0; cc < S.x[i].cols(); ++cc) x.at(r, cc) = S.x[i].at(r, cc);
            for (int r = 0; r < Q.x[i].rows(); ++r)
              for (int cc = 0; cc < Q.x[i].cols(); ++cc)
                x.at(dsub.dims[ip] + r, dsub.dims[i] + cc) = Q.x[i].at(r, cc);
            for (int r = 0; r < dsub.dims[ip]; ++r)
              for (int cc = 0; cc < dquot.dims[i]; ++cc) {
                x.at(r, dsub.dims[i] + cc) = (uint8_t)(rem % q);
                rem /= q;
              }
            big.x[i] = x;
          }
          Multisegment o = orbit_of(big);
          if (f.terms.count(o)) hist[{mquot, msub}][o] += 1;
        }
      }
    return hist;
  };

  std::map<long, std::map<std::pair<Multisegment, Multisegment>, std::map<Multisegment, long>>>
      per_q;
  for (int q : pts) per_q[q] = run(q);
  auto check_hist = run(check_prime_);

  std::set<std::pair<Multisegment, Multisegment>> keys;
  for (auto& [q, h] : per_q)
    for (auto& [k, v] : h) keys.insert(k);
  for (auto& [k, v] : check_hist) keys.insert(k);

  std::map<std::pair<Multisegment, Multisegment>, Laurent> out;
  for (const auto& key : keys) {
    Laurent acc;
    for (const auto& [o, fo] : f.terms) {
      std::vector<std::pair<long, Int>> samples;
      for (int q : pts) {
        long n = 0;
        auto hit = per_q[q].find(key);
        if (hit != per_q[q].end()) {
          auto oit = hit->second.find(o);
          if (oit != hit->second.end()) n = oit->second;
        }
        samples.emplace_back(q, Int(n));
      }
      QPoly poly = interpolate(samples, "coproduct_component");
      long ncheck = 0;
      auto hit = check_hist.find(key);
      if (hit != check_hist.end()) {
        auto oit = hit->second.find(o);
        if (oit != hit->second.end()) ncheck = oit->second;
      }
      if (qpoly_eval(poly, check_prime_) != ncheck)
        throw std::runtime_error("coproduct_component: interpolation inconsistency");
      acc += fo * qpoly_to_laurent(poly);
    }
    if (!acc.is_zero()) out[key] = Laurent::v((int)tw) * acc;
  }
  return out;
}

HallElem HallAlgebra::E(int vertex, int divided_power) {
  if (p_ < 2) throw std::invalid_argument("E: requires p >= 2");
  if (divided_power < 1) throw std::invalid_argument("E: bad power");
  vertex = ((vertex % p_) + p_) % p_;
  Multisegment m = Multisegment::segment(p_, vertex, 1, divided_power);
  HallElem e;
  e.p = p_;
  e.deg = m.dim();
  e.add(m, Laurent(1));
  return e;
}

namespace {
// x_2..x_p identities, x_1 the nilpotent Jordan matrix of type la
NilRep zeta_representative(int p, int l, const Partition& la) {
  NilRep r;
  r.p = p;
  r.q = 2;
  r.dims.assign(p, l);
  r.x.resize(p);
  for (int i = 0; i < p; ++i) r.x[i] = Mat::identity(l);
  Mat j(l, l);
  int pos = 0;
  for (int part : la.parts()) {
    for (int k = 1; k < part; ++k) j.at(pos + k - 1, pos + k) = 1;
    pos += part;
  }
  r.x[1 % p] = j;
  return r;
}
}  // namespace

HallElem HallAlgebra::zeta(int l) {
  if (l < 0) throw std::invalid_argument("zeta: l >= 0");
  HallElem z;
  z.p = p_;
  z.deg = CDim{std::vector<int>(p_, l)};
  if (l == 0) {
    z.add(Multisegment::zero(p_), Laurent(1));
    return z;
  }
  for (const auto& la : Partition::all(l)) z.add(orbit_of(zeta_representative(p_, l, la)), Laurent(1));
  return z;
}

HallElem HallAlgebra::one_nilcone(int l) {
  HallElem z;
  z.p = p_;
  z.deg = CDim{std::vector<int>(p_, l)};
  for (const auto& m : multisegments_of_dim(z.deg)) z.add(m, Laurent(1));
  return z;
}

HallElemQ HallAlgebra::h_gen(int l) {
  if (l < 1) throw std::invalid_argument("h_gen: l >= 1");
  HallElemQ h;
  h.p = p_;
  h.deg = CDim{std::vector<int>(p_, l)};
  for (const auto& la : Partition::all(l)) {
    Laurent n(1);
    for (int i = 1; i <= la.length() - 1; ++i) n *= Laurent(1) - Laurent::v(-2 * i);
    h.add(orbit_of(zeta_representative(p_, l, la)), LaurentQ(n, Int(l)));
  }
  return h;
}

HallElemQ HallAlgebra::h_star(int l) {
  HallElemQ h = h_gen(l);
  HallElemQ out;
  out.p = p_;
  out.deg = h.deg;
  for (const auto& [m, c] : h.terms) out.add(m, LaurentQ(Laurent::v(l * p_)) * c);
  return out;
}

HallElem HallAlgebra::u_elem(int l) {
  if (p_ < 2) throw std::invalid_argument("u_elem: requires p >= 2");
  if (l < 1) throw std::invalid_argument("u_elem: l >= 1");
  auto it = u_cache_.find(l);
  if (it != u_cache_.end()) return it->second;
  HallElem u = one_nilcone(l);
  u -= zeta(l);
  for (int k = 1; k < l; ++k) u -= product(zeta(l - k), u_elem(k));
  u_cache_.emplace(l, u);
  return u;
}

namespace {

// incremental echelon form over the fraction field of Z[v,v^-1], using
// cross-multiplication so the entries stay polynomial
class LaurentEchelon {
public:
  explicit LaurentEchelon(size_t width) : width_(width) {}

  // reduce a row against the current pivots; returns the residue
  std::vector<Laurent> reduce(std::vector<Laurent> row) const {
    for (size_t k = 0; k < rows_.size(); ++k) {
      size_t p = pivots_[k];
      if (row[p].is_zero()) continue;
      Laurent a = rows_[k][p], b = row[p];
      for (size_t j = 0; j < width_; ++j) row[j] = a * row[j] - b * rows_[k][j];
    }
    return row;
  }

  // true if the row enlarged the span
  bool insert(std::vector<Laurent> row) {
    row = reduce(std::move(row));
    for (size_t j = 0; j < width_; ++j)
      if (!row[j].is_zero()) {
        pivots_.push_back(j);
        rows_.push_back(std::move(row));
        return true;
      }
    return false;
  }

  bool contains(std::vector<Laurent> row) const {
    row = reduce(std::move(row));
    for (const auto& x : row)
      if (!x.is_zero()) return false;
    return true;
  }

  size_t rank() const { return rows_.size(); }

private:
  size_t width_;
  std::vector<std::vector<Laurent>> rows_;
  std::vector<size_t> pivots_;
};

}  // namespace

bool HallAlgebra::in_e_monomial_span(const HallElem& x) {
  if (p_ < 2) throw std::invalid_argument("in_e_monomial_span: requires p >= 2");
  CDim target = x.deg;
  std::vector<Multisegment> basis = multisegments_of_dim(target);
  std::map<Multisegment, int> index;
  for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = (int)i;
  auto row_of = [&](const HallElem& e) {
    std::vector<Laurent> row(basis.size());
    for (const auto& [m, c] : e.terms) row[index.at(m)] = c;
    return row;
  };

  LaurentEchelon ech(basis.size());
  std::vector<Laurent> xrow = row_of(x);
  if (ech.contains(xrow)) return true;  // x == 0

  // divided E-words of the target dimension, adjacent letters distinct
  bool found = false;
  std::vector<std::pair<int, int>> word;
  std::function<void(CDim)> rec = [&](CDim rem) {
    if (found) return;
    if (rem.total() == 0) {
      HallElem prod;
      prod.p = p_;
      prod.deg = CDim{std::vector<int>(p_, 0)};
      prod.add(Multisegment::zero(p_), Laurent(1));
      for (const auto& [v, m] : word) prod = product(prod, E(v, m));
      if (ech.insert(row_of(prod)) && ech.contains(xrow)) found = true;
      return;
    }
    for (int v = 0; v < p_ && !found; ++v) {
      if (!word.empty() && word.back().first == v) continue;
      for (int m = 1; m <= rem.dims[v] && !found; ++m) {
        word.push_back({v, m});
        CDim r2 = rem;
        r2.dims[v] -= m;
        rec(r2);
        word.pop_back();
      }
    }
  };
  rec(target);
  return found;
}

long laurent_rank(std::vector<std::vector<Laurent>> m) {
  if (m.empty()) return 0;
  const size_t rows = m.size(), cols = m[0].size();
  Laurent prev(1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && m[sel][c].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j) {
        Laurent num = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        auto d = Laurent::div_exact(num, prev);
        if (!d) throw std::logic_error("laurent_rank: Bareiss division failed");
        m[i][j] = *d;
      }
      m[i][c] = Laurent();
    }
    prev = m[r][c];
    ++r;
  }
  return (long)r;
}

}  // namespace qloop
