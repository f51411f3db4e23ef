// Lattice-level geometry of a star-shaped datum: the lattice Q^ = K(X) with
// its Euler form, the Picard group with twist carry-over, degrees and slopes,
// HN types with their combinatorial order, finite/affine root tests, the
// subsheaf twist bound, and torsion stratum codimensions.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qloop/laurent.hpp"
#include "qloop/symm.hpp"

namespace qloop {

struct StarDiagram {
  std::vector<int> weights;  // branch weights p_i >= 2; empty encodes P^1

  int branches() const { return (int)weights.size(); }
  // the finite types among stars: chains (N <= 2), (2,2,n), (2,3,3/4/5)
  bool finite_type() const;
  void check_branch(int i, int j) const;  // 0 <= i < N, 1 <= j <= p_i - 1
};

// rank * alpha_star + sum tor[(i,j)] * alpha_(i,j) + ndelta * delta
struct KClass {
  int rank = 0;
  std::map<std::pair<int, int>, int> tor;
  int ndelta = 0;

  static KClass of_rank_deg(int r, int d) {  // N = 0 shorthand
    KClass k;
    k.rank = r;
    k.ndelta = d;
    return k;
  }
  static KClass delta(int n = 1) { return of_rank_deg(0, n); }
  static KClass simple_tor(int i, int j, int c = 1) {
    KClass k;
    k.tor[{i, j}] = c;
    return k;
  }

  int tor_coeff(int i, int j) const {
    auto it = tor.find({i, j});
    return it == tor.end() ? 0 : it->second;
  }
  bool is_zero() const { return rank == 0 && ndelta == 0 && tor.empty(); }

  KClass& operator+=(const KClass& o);
  KClass& operator-=(const KClass& o);
  friend KClass operator+(KClass a, const KClass& b) { a += b; return a; }
  friend KClass operator-(KClass a, const KClass& b) { a -= b; return a; }
  KClass scaled(int m) const;
  auto operator<=>(const KClass& o) const = default;

  std::string str() const;
};

// dim Hom - dim Ext, extended bilinearly from the simple classes
long euler_form(const StarDiagram& d, const KClass& a, const KClass& b);
long symmetric_form(const StarDiagram& d, const KClass& a, const KClass& b);

// |alpha| (rational degree); alpha_(i,j) counts 1/p_i, delta counts 1
mpq_class abs_deg(const StarDiagram& d, const KClass& a);

// slope |alpha|/rank; nullopt encodes infinity (rank 0)
std::optional<mpq_class> slope(const StarDiagram& d, const KClass& a);

// the positive cone Q^+
bool is_positive(const StarDiagram& d, const KClass& a);

// L_delta^n tensor L_1^{j_1} ... L_N^{j_N}, with L_i^{p_i} = L_delta
struct PicElem {
  int n = 0;
  std::vector<int> twists;  // size N, twists[i] in [0, p_i)

  static PicElem identity(const StarDiagram& d) { return {0, std::vector<int>(d.weights.size(), 0)}; }
  bool operator==(const PicElem& o) const = default;
};

PicElem pic_mul(const StarDiagram& d, const PicElem& a, const PicElem& b);
PicElem pic_inverse(const StarDiagram& d, const PicElem& a);
PicElem pic_generator(const StarDiagram& d, int branch);  // L_i; branch = -1 gives L_delta
PicElem omega(const StarDiagram& d);                      // canonical class
KClass pic_class(const StarDiagram& d, const PicElem& L);
int deg_branch(const StarDiagram& d, const PicElem& L, int i);  // deg_i in Z/p_i

// the set S: O together with L_i^j for j = 1..p_i-1
std::vector<PicElem> s_set(const StarDiagram& d);

struct HNType {
  std::vector<KClass> parts;  // strictly decreasing slopes
  bool operator==(const HNType& o) const = default;
};

// group indecomposable summand classes by slope, sorted decreasing
HNType slope_and_hn(const StarDiagram& d, const std::vector<KClass>& summands);

enum class HNOrder { Less, Greater, Equal, Incomparable };
HNOrder hn_compare(const StarDiagram& d, const HNType& a, const HNType& b);

enum class RootKind { Real, Imaginary, NotRoot };
RootKind root_test(const StarDiagram& d, const KClass& a);

// positive roots of the finite star diagram, as (rank, tor) classes
std::vector<KClass> finite_positive_roots(const StarDiagram& d);

// Subsheaf generation bound: Q = deg(alpha) - (rank(alpha)-1) * {deg(beta) -
// (rank(beta)-1) n0 delta + (rank(alpha)-1)(3 delta - omega)}, projected by
// |.|; returns the greatest integer q with q < |Q| - |omega|.
long lemma23_bound(const StarDiagram& d, const KClass& alpha, const KClass& beta, long n0);

// multiplicities d_s(n, alpha) = <[L_s(n)], alpha>, indexed like s_set(d)
std::vector<long> builder_dims(const StarDiagram& d, int n, const KClass& alpha);
bool generated_at_twist(const std::vector<long>& dims);

// codim U^{l delta}_lambda = (l - r) + 2 sum_k n(lambda^(k))
long strata_codim(const std::vector<Partition>& multi, int l);

}  // namespace qloop
