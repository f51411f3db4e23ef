#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qloop/symm.hpp"

using namespace qloop;

TEST_CASE("partition basics") {
  Partition p{2, 1};
  CHECK(p.weight() == 3);
  CHECK(Partition({1, 2}).parts() == std::vector<int>({2, 1}));
  CHECK(Partition{4, 2, 1}.conjugate() == Partition({3, 2, 1, 1}));
  CHECK(Partition{}.weight() == 0);
  CHECK(Partition{2, 2}.n_stat() == 2);
  CHECK(Partition::all(4).size() == 5);
  CHECK(Partition::all(8).size() == 22);
}

TEST_CASE("xi multiplication is union") {
  SymElem a = SymElem::xi(Partition{2});
  SymElem b = SymElem::xi(Partition{1});
  CHECK(a * b == SymElem::xi(Partition{2, 1}));
  CHECK(b * b == SymElem::xi(Partition{1, 1}));
  CHECK((a + b) * b == SymElem::xi(Partition{2, 1}) + SymElem::xi(Partition{1, 1}));
  CHECK(a * b == b * a);
}

TEST_CASE("schur via Jacobi-Trudi") {
  CHECK(schur(Partition{2}) == SymElem::xi(Partition{2}));
  CHECK(schur(Partition{1, 1}) ==
        SymElem::xi(Partition{1, 1}) - SymElem::xi(Partition{2}));
  CHECK(schur(Partition{2, 1}) ==
        SymElem::xi(Partition{2, 1}) - SymElem::xi(Partition{3}));
  CHECK(schur(Partition{}) == SymElem(Laurent(1)));
}

TEST_CASE("chi inverts the xi series") {
  CHECK(chi(1) == SymElem::xi(Partition{1}, Laurent(-1)));
  CHECK(chi(2) == SymElem::xi(Partition{1, 1}) - SymElem::xi(Partition{2}));
  for (int l = 0; l <= 10; ++l) {
    SymElem s;
    for (int i = 0; i <= l; ++i) s += xi_gen(i) * chi(l - i);
    CHECK(s == (l == 0 ? SymElem(Laurent(1)) : SymElem()));
  }
}

TEST_CASE("theta values") {
  CHECK(theta(0) == SymElem(Laurent(1)));
  CHECK(theta(1) ==
        SymElem::xi(Partition{1}, Laurent::v(-1) - Laurent::v(1)));
  // theta_2 computed by hand from the definition
  SymElem t2 = SymElem::xi(Partition{2}, Laurent::v(-2)) +
               SymElem::xi(Partition{1, 1}, -Laurent(1)) +
               Laurent::v(2) * chi(2);
  CHECK(theta(2) == t2);
}

TEST_CASE("H generators from the logarithm") {
  CHECK(clear_rational(h_generator(1)) == SymElem::xi(Partition{1}));
  SymElemQ h2 = h_generator(2);
  CHECK(h2.coeff(Partition{2}) == LaurentQ(1));
  CHECK(h2.coeff(Partition{1, 1}) == LaurentQ(Laurent(-1), 2));
  SymElemQ h3 = h_generator(3);
  CHECK(h3.coeff(Partition{3}) == LaurentQ(1));
  CHECK(h3.coeff(Partition{2, 1}) == LaurentQ(Laurent(-1)));
  CHECK(h3.coeff(Partition{1, 1, 1}) == LaurentQ(Laurent(1), 3));
}

// re-exponentiate sum H_(l) s^l and compare with the xi series, order <= 8
TEST_CASE("exp/log round trip") {
  const int N = 8;
  std::vector<SymElemQ> H(N + 1);
  for (int l = 1; l <= N; ++l) H[l] = h_generator(l);
  // exp: E[w] = coefficient of s^w, E[0] = 1, via E' = H' E (formal ODE) or
  // direct powers; use direct powers of the truncated series.
  std::vector<SymElemQ> E(N + 1);
  E[0] = SymElemQ(LaurentQ(1));
  // P[m][w]: coefficient of s^w in (sum H_l s^l)^m
  std::vector<std::vector<SymElemQ>> P(N + 1, std::vector<SymElemQ>(N + 1));
  P[0][0] = SymElemQ(LaurentQ(1));
  for (int m = 1; m <= N; ++m)
    for (int w = m; w <= N; ++w) {
      SymElemQ acc;
      for (int k = 1; k <= w - m + 1; ++k) acc += H[k] * P[m - 1][w - k];
      P[m][w] = acc;
    }
  Int fact = 1;
  for (int m = 1; m <= N; ++m) {
    fact *= m;
    for (int w = m; w <= N; ++w) {
      SymElemQ scaled;
      for (const auto& [mu, c] : P[m][w].terms()) scaled.add(mu, c.div_by_int(fact));
      E[w] += scaled;
    }
  }
  for (int w = 1; w <= N; ++w) CHECK(E[w] == to_rational(xi_gen(w)));
}

TEST_CASE("littlewood-richardson nonnegativity up to weight 8") {
  for (int n = 1; n <= 7; ++n)
    for (int m = 1; m + n <= 8; ++m)
      for (const auto& la : Partition::all(n))
        for (const auto& mu : Partition::all(m)) {
          SymElem prod = schur(la) * schur(mu);
          for (const auto& [nu, c] : schur_expand(prod)) {
            CHECK(c.is_constant());
            CHECK(c.nonneg_coeffs());
          }
        }
}

TEST_CASE("schur expansion round trip") {
  SymElem e = schur(Partition{3, 1}) + Laurent::v(2) * schur(Partition{2, 2});
  auto ex = schur_expand(e);
  SymElem back;
  for (const auto& [mu, c] : ex) back += c * schur(mu);
  CHECK(back == e);
}
