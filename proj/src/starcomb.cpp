#include "qloop/starcomb.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qloop {

bool StarDiagram::finite_type() const {
  const int n = branches();
  if (n <= 2) return true;  // chains
  if (n >= 4) return false;
  std::vector<int> w = weights;
  std::sort(w.begin(), w.end());
  if (w[0] != 2) return false;
  if (w[1] == 2) return true;  // (2,2,n) = D type
  if (w[1] != 3) return false;
  return w[2] >= 3 && w[2] <= 5;  // E6, E7, E8
}

void StarDiagram::check_branch(int i, int j) const {
  if (i < 0 || i >= branches() || j < 1 || j >= weights[i])
    throw std::out_of_range("StarDiagram: branch index out of range");
}

KClass& KClass::operator+=(const KClass& o) {
  rank += o.rank;
  ndelta += o.ndelta;
  for (const auto& [ij, c] : o.tor) {
    int& slot = tor[ij];
    slot += c;
    if (slot == 0) tor.erase(ij);
  }
  return *this;
}

KClass& KClass::operator-=(const KClass& o) {
  rank -= o.rank;
  ndelta -= o.ndelta;
  for (const auto& [ij, c] : o.tor) {
    int& slot = tor[ij];
    slot -= c;
    if (slot == 0) tor.erase(ij);
  }
  return *this;
}

KClass KClass::scaled(int m) const {
  KClass r;
  if (m == 0) return r;
  r.rank = rank * m;
  r.ndelta = ndelta * m;
  for (const auto& [ij, c] : tor) r.tor[ij] = c * m;
  return r;
}

std::string KClass::str() const {
  std::ostringstream os;
  os << "(r=" << rank;
  for (const auto& [ij, c] : tor) os << ",a[" << ij.first << "," << ij.second << "]=" << c;
  os << ",d=" << ndelta << ")";
  return os.str();
}

long euler_form(const StarDiagram& d, const KClass& a, const KClass& b) {
  for (const auto& [ij, c] : a.tor) d.check_branch(ij.first, ij.second);
  for (const auto& [ij, c] : b.tor) d.check_branch(ij.first, ij.second);
  // table on the basis {O, alpha_(i,j), delta}:
  //   <O,O> = 1, <O,delta> = 1, <delta,O> = -1, <delta,delta> = 0
  //   <O, a_ij> = 0 (j >= 1), <a_ij, O> = -[j == 1]
  //   <a_ij, a_il> = [j == l] - [j-1 == l], cross-branch = 0,
  //   <a_ij, delta> = <delta, a_ij> = 0
  long s = 0;
  s += (long)a.rank * b.rank;
  s += (long)a.rank * b.ndelta - (long)a.ndelta * b.rank;
  for (const auto& [ij, c] : a.tor) {
    if (ij.second == 1) s -= (long)c * b.rank;
    s += (long)c * (b.tor_coeff(ij.first, ij.second) - b.tor_coeff(ij.first, ij.second - 1));
  }
  return s;
}

long symmetric_form(const StarDiagram& d, const KClass& a, const KClass& b) {
  return euler_form(d, a, b) + euler_form(d, b, a);
}

mpq_class abs_deg(const StarDiagram& d, const KClass& a) {
  mpq_class s(a.ndelta);
  for (const auto& [ij, c] : a.tor) {
    d.check_branch(ij.first, ij.second);
    s += mpq_class(c, d.weights[ij.first]);
  }
  s.canonicalize();
  return s;
}

std::optional<mpq_class> slope(const StarDiagram& d, const KClass& a) {
  if (a.rank == 0) {
    if (a.ndelta == 0 && a.tor.empty()) throw std::invalid_argument("slope of zero class");
    return std::nullopt;  // infinity
  }
  mpq_class m = abs_deg(d, a) / a.rank;
  m.canonicalize();
  return m;
}

bool is_positive(const StarDiagram& d, const KClass& a) {
  if (a.rank > 0) return true;
  if (a.rank < 0) return false;
  if (a.ndelta < 0) return false;
  if (a.ndelta > 0) return true;
  for (const auto& [ij, c] : a.tor)
    if (c < 0) return false;
  return true;
}

PicElem pic_mul(const StarDiagram& d, const PicElem& a, const PicElem& b) {
  PicElem r;
  r.n = a.n + b.n;
  r.twists.resize(d.weights.size());
  for (size_t i = 0; i < d.weights.size(); ++i) {
    int t = a.twists[i] + b.twists[i];
    r.n += t / d.weights[i];
    r.twists[i] = t % d.weights[i];
  }
  return r;
}

PicElem pic_inverse(const StarDiagram& d, const PicElem& a) {
  PicElem r;
  r.n = -a.n;
  r.twists.resize(d.weights.size());
  for (size_t i = 0; i < d.weights.size(); ++i) {
    if (a.twists[i] == 0) {
      r.twists[i] = 0;
    } else {
      r.twists[i] = d.weights[i] - a.twists[i];
      r.n -= 1;  // L_i^j * L_i^{p_i - j} = L_delta
    }
  }
  return r;
}

PicElem pic_generator(const StarDiagram& d, int branch) {
  PicElem r = PicElem::identity(d);
  if (branch < 0) {
    r.n = 1;
  } else {
    d.check_branch(branch, 1);
    r.twists[branch] = 1;
  }
  return r;
}

PicElem omega(const StarDiagram& d) {
  // L_delta^{N-2} tensor prod L_i^{-1}
  const int N = d.branches();
  PicElem w = PicElem::identity(d);
  w.n = N - 2;
  for (int i = 0; i < N; ++i) w = pic_mul(d, w, pic_inverse(d, pic_generator(d, i)));
  return w;
}

KClass pic_class(const StarDiagram& d, const PicElem& L) {
  KClass k;
  k.rank = 1;
  k.ndelta = L.n;
  for (int i = 0; i < d.branches(); ++i)
    for (int j = 1; j <= L.twists[i]; ++j) k.tor[{i, j}] = 1;
  return k;
}

int deg_branch(const StarDiagram& d, const PicElem& L, int i) {
  if (i < 0 || i >= d.branches()) throw std::out_of_range("deg_branch");
  return L.twists[i] % d.weights[i];
}

std::vector<PicElem> s_set(const StarDiagram& d) {
  std::vector<PicElem> s;
  s.push_back(PicElem::identity(d));
  for (int i = 0; i < d.branches(); ++i)
    for (int j = 1; j < d.weights[i]; ++j) {
      PicElem e = PicElem::identity(d);
      e.twists[i] = j;
      s.push_back(e);
    }
  return s;
}

HNType slope_and_hn(const StarDiagram& d, const std::vector<KClass>& summands) {
  if (summands.empty()) throw std::invalid_argument("slope_and_hn: empty input");
  // key: nullopt (infinity) sorts first, then decreasing rational slope
  std::vector<std::pair<std::optional<mpq_class>, KClass>> groups;
  for (const auto& s : summands) {
    auto mu = slope(d, s);
    bool found = false;
    for (auto& [m, k] : groups)
      if (m == mu) {
        k += s;
        found = true;
        break;
      }
    if (!found) groups.emplace_back(mu, s);
  }
  std::sort(groups.begin(), groups.end(), [](const auto& x, const auto& y) {
    if (!x.first) return (bool)y.first;
    if (!y.first) return false;
    return *x.first > *y.first;
  });
  HNType t;
  for (auto& [m, k] : groups) t.parts.push_back(k);
  return t;
}

HNOrder hn_compare(const StarDiagram& d, const HNType& a, const HNType& b) {
  KClass ta, tb;
  for (const auto& p : a.parts) ta += p;
  for (const auto& p : b.parts) tb += p;
  if (!(ta == tb)) throw std::invalid_argument("hn_compare: unequal total class");
  if (a == b) return HNOrder::Equal;
  size_t l = 0;
  while (l < a.parts.size() && l < b.parts.size() && a.parts[l] == b.parts[l]) ++l;
  if (l >= a.parts.size() || l >= b.parts.size())
    return HNOrder::Incomparable;  // cannot happen for equal totals, kept defensive
  const KClass& x = a.parts[l];
  const KClass& y = b.parts[l];
  auto mx = slope(d, x), my = slope(d, y);
  // a > b iff mu(x) < mu(y), or equal slopes and |x| < |y|
  auto cmp = [&](const std::optional<mpq_class>& u, const std::optional<mpq_class>& v) {
    if (!u && !v) return 0;
    if (!u) return 1;   // infinity
    if (!v) return -1;
    if (*u < *v) return -1;
    if (*u > *v) return 1;
    return 0;
  };
  int c = cmp(mx, my);
  if (c < 0) return HNOrder::Greater;
  if (c > 0) return HNOrder::Less;
  mpq_class dx = abs_deg(d, x), dy = abs_deg(d, y);
  if (dx < dy) return HNOrder::Greater;
  if (dx > dy) return HNOrder::Less;
  return HNOrder::Incomparable;
}

namespace {

// simple roots of the finite star diagram: index 0 = star, then branch chains
struct FiniteBasis {
  std::vector<KClass> simples;
  explicit FiniteBasis(const StarDiagram& d) {
    KClass star;
    star.rank = 1;
    simples.push_back(star);
    for (int i = 0; i < d.branches(); ++i)
      for (int j = 1; j < d.weights[i]; ++j) simples.push_back(KClass::simple_tor(i, j));
  }
};

}  // namespace

std::vector<KClass> finite_positive_roots(const StarDiagram& d) {
  if (!d.finite_type()) throw std::invalid_argument("finite_positive_roots: wild diagram");
  FiniteBasis basis(d);
  // closure under adding simples: in the simply laced case beta + alpha_i is a
  // root iff (beta, alpha_i) = -1 (for beta != -alpha_i)
  std::set<KClass> roots(basis.simples.begin(), basis.simples.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<KClass> cur(roots.begin(), roots.end());
    for (const auto& b : cur)
      for (const auto& s : basis.simples) {
        if (symmetric_form(d, b, s) == -1) {
          KClass n = b + s;
          if (roots.insert(n).second) grew = true;
        }
      }
  }
  return std::vector<KClass>(roots.begin(), roots.end());
}

RootKind root_test(const StarDiagram& d, const KClass& a) {
  if (!d.finite_type()) throw std::invalid_argument("root_test: wild diagram unsupported");
  KClass res = a;
  res.ndelta = 0;  // residue modulo delta
  if (res.is_zero()) return a.ndelta != 0 ? RootKind::Imaginary : RootKind::NotRoot;
  auto roots = finite_positive_roots(d);
  for (const auto& r : roots) {
    if (res == r) return RootKind::Real;
    KClass neg = r.scaled(-1);
    if (res == neg) return RootKind::Real;
  }
  return RootKind::NotRoot;
}

long lemma23_bound(const StarDiagram& d, const KClass& alpha, const KClass& beta, long n0) {
  if (alpha.rank < 1) throw std::invalid_argument("lemma23_bound: rank(alpha) >= 1 required");
  if (beta.rank < alpha.rank) throw std::invalid_argument("lemma23_bound: rank(beta) >= rank(alpha)");
  const long ra = alpha.rank, rb = beta.rank;
  // everything projected through |.|; the rank part contributes 0 there,
  // so deg and the class itself have the same image
  mpq_class da = abs_deg(d, alpha);
  mpq_class db = abs_deg(d, beta);
  mpq_class wo = abs_deg(d, pic_class(d, omega(d)));
  mpq_class inner = db - (rb - 1) * mpq_class(n0) + (ra - 1) * (mpq_class(3) - wo);
  mpq_class Q = da - (ra - 1) * inner;
  mpq_class bound = Q - wo;  // q < |Q| - |omega|
  // greatest integer strictly below `bound`
  mpz_class num = bound.get_num(), den = bound.get_den();
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (fl * den == num) fl -= 1;  // strict inequality
  return fl.get_si();
}

std::vector<long> builder_dims(const StarDiagram& d, int n, const KClass& alpha) {
  std::vector<long> out;
  for (const auto& s : s_set(d)) {
    KClass ls = pic_class(d, s);
    ls.ndelta += n;  // L_s(n)
    out.push_back(euler_form(d, ls, alpha));
  }
  return out;
}

bool generated_at_twist(const std::vector<long>& dims) {
  return std::all_of(dims.begin(), dims.end(), [](long x) { return x >= 0; });
}

long strata_codim(const std::vector<Partition>& multi, int l) {
  int w = 0;
  for (const auto& p : multi) w += p.weight();
  if (w != l) throw std::invalid_argument("strata_codim: weights do not sum to l");
  long s = l - (long)multi.size();
  for (const auto& p : multi) s += 2 * p.n_stat();
  return s;
}

}  // namespace qloop
