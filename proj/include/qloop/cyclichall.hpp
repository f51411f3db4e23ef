// Hall algebra of nilpotent representations of the cyclic quiver with p
// vertices (arrows i -> i-1). Structure constants are counted by exhaustive
// subspace enumeration over several finite fields and interpolated to exact
// polynomials in q, which enter elements through the substitution q = v^-2.
#pragma once

#include <map>
#include <vector>

#include "qloop/gf.hpp"
#include "qloop/laurent.hpp"

namespace qloop {

struct CDim {
  std::vector<int> dims;  // indexed by vertex, size p

  int p() const { return (int)dims.size(); }
  int total() const;
  int at(int i) const { return dims[((i % p()) + p()) % p()]; }
  CDim& operator+=(const CDim& o);
  friend CDim operator+(CDim a, const CDim& b) { a += b; return a; }
  auto operator<=>(const CDim& o) const = default;
  std::string str() const;
};

// multiplicities of segments; a segment (i, l) has its generator at vertex i
// and occupies vertices i, i-1, ..., i-l+1
struct Multisegment {
  int p = 1;
  std::map<std::pair<int, int>, int> mult;  // (top vertex, length) -> multiplicity > 0

  static Multisegment zero(int p) { return {p, {}}; }
  static Multisegment segment(int p, int i, int l, int m = 1);
  Multisegment& add(int i, int l, int m = 1);
  CDim dim() const;
  int total() const { return dim().total(); }
  auto operator<=>(const Multisegment& o) const = default;
  std::string str() const;
};

// all multisegments of a given dimension vector
std::vector<Multisegment> multisegments_of_dim(const CDim& d);

// true iff for every length t some vertex has m_{i,t} = 0
bool aperiodic(const Multisegment& m);
// relabel vertices i -> i + shift
Multisegment rotated(const Multisegment& m, int shift);

struct NilRep {
  int p = 1;
  int q = 2;
  std::vector<int> dims;
  std::vector<Mat> x;  // x[i] : V_i -> V_{i-1}, shape dims[i-1] x dims[i]

  bool nilpotent() const;
};

// kernel-dimension invariants d_i^k computed by exact rank over F_q
Multisegment orbit_of(const NilRep& r);
NilRep representative(int p, int q, const Multisegment& m);

struct HallElem {
  int p = 1;
  CDim deg;
  std::map<Multisegment, Laurent> terms;

  bool is_zero() const { return terms.empty(); }
  void add(const Multisegment& m, const Laurent& c);
  Laurent coeff(const Multisegment& m) const;
  HallElem& operator+=(const HallElem& o);
  HallElem& operator-=(const HallElem& o);
  friend HallElem operator*(const Laurent& c, HallElem e);
  bool operator==(const HallElem& o) const { return p == o.p && terms == o.terms; }
  std::string str() const;
};

// same, with rational coefficients (h_l and its uses only)
struct HallElemQ {
  int p = 1;
  CDim deg;
  std::map<Multisegment, LaurentQ> terms;

  void add(const Multisegment& m, const LaurentQ& c);
  HallElemQ& operator+=(const HallElemQ& o);
  bool operator==(const HallElemQ& o) const { return p == o.p && terms == o.terms; }
};

// integer polynomial in q
using QPoly = std::map<int, Int>;
Laurent qpoly_to_laurent(const QPoly& f);  // substitute q = v^-2
Int qpoly_eval(const QPoly& f, long q);

class HallAlgebra {
public:
  explicit HallAlgebra(int p, std::vector<int> primes = {2, 3, 4, 5}, int check_prime = 7);

  int p() const { return p_; }

  // #{U <= M_whole : U iso sub, M_whole/U iso quot} as a polynomial in q;
  // interpolated from the sample fields, verified at the held-out field
  QPoly structure_poly(const Multisegment& quot, const Multisegment& sub,
                       const Multisegment& whole);

  HallElem product(const HallElem& f, const HallElem& g);
  HallElemQ product(const HallElemQ& f, const HallElemQ& g);

  // Delta_{dquot,dsub}(f) as a sum of 1_{quot orbit} (x) 1_{sub orbit}
  std::map<std::pair<Multisegment, Multisegment>, Laurent> coproduct_component(
      const HallElem& f, const CDim& dquot, const CDim& dsub);

  // named elements
  HallElem E(int vertex, int divided_power = 1);  // indicator of the l*eps_i point (p >= 2)
  HallElem zeta(int l);
  HallElem one_nilcone(int l);
  HallElemQ h_gen(int l);     // Eq (1.2)
  HallElemQ h_star(int l);    // v^{lp} h_l
  HallElem u_elem(int l);     // Eq (10.1) recursion

  // exact span test against all divided E-monomials of matching dimension
  bool in_e_monomial_span(const HallElem& x);

  // twist exponent {d', d''} = sum d'_i d''_i - sum d'_i d''_{i+1}
  static long twist_exp(const CDim& a, const CDim& b);

  // product convention, fixed by the Ringel calibration suite (quantum Serre
  // relations): the left factor is evaluated on the quotient, and the twist
  // uses {d_left, d_right}
  struct Convention {
    bool left_eats_quotient = true;
    bool twist_left_first = true;
  };
  Convention convention;

  // counts per (sub orbit, quot orbit) for a fixed whole orbit over F_q
  const std::map<std::pair<Multisegment, Multisegment>, long>& sweep(const Multisegment& whole,
                                                                     int q);

  int hom_dim(const Multisegment& a, const Multisegment& b);  // dim Hom(M_a, M_b)
  long euler_chi(const CDim& a, const CDim& b);               // quiver Euler form
  int ext_dim(const Multisegment& a, const Multisegment& b);

private:
  std::vector<int> sample_points(int count);

  int p_;
  std::vector<int> primes_;
  int check_prime_;
  std::map<std::pair<Multisegment, int>, std::map<std::pair<Multisegment, Multisegment>, long>>
      sweep_cache_;
  std::map<std::tuple<Multisegment, Multisegment, Multisegment>, QPoly> poly_cache_;
  std::map<std::pair<Multisegment, Multisegment>, int> hom_cache_;
  std::map<int, HallElem> u_cache_;
};

// exact rank of a matrix over the fraction field of Z[v, v^-1] (Bareiss)
long laurent_rank(std::vector<std::vector<Laurent>> m);

}  // namespace qloop
