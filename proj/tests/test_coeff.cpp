#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qloop/laurent.hpp"

using namespace qloop;

namespace {
Laurent random_laurent(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(0, 4), expd(-6, 6), coeffd(-9, 9);
  Laurent r;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) r += Laurent::term(expd(rng), coeffd(rng));
  return r;
}
}  // namespace

TEST_CASE("laurent arithmetic basics") {
  Laurent a = Laurent::v(1) + Laurent::v(-1);
  CHECK((a * a) == Laurent::v(2) + Laurent(2) + Laurent::v(-2));
  Laurent x = Laurent::term(3, 5) - Laurent::v(-2);
  CHECK(x + Laurent() == x);
  CHECK((Laurent::v(2) - Laurent(1)) * (Laurent::v(2) + Laurent(1)) ==
        Laurent::v(4) - Laurent(1));
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 300; ++i) {
    Laurent a = random_laurent(rng), b = random_laurent(rng), c = random_laurent(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("bar involution") {
  Laurent a = Laurent::v(2) - Laurent::v(-1);
  CHECK(a.bar() == Laurent::v(-2) - Laurent::v(1));
  CHECK(Laurent(3).bar() == Laurent(3));
  Laurent b = Laurent::v(5) + Laurent(2);
  CHECK(b.bar().bar() == b);

  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    Laurent x = random_laurent(rng), y = random_laurent(rng);
    CHECK((x * y).bar() == x.bar() * y.bar());
    CHECK(x.bar().bar() == x);
  }
}

TEST_CASE("quantum numbers") {
  CHECK(qint(3) == Laurent::v(2) + Laurent(1) + Laurent::v(-2));
  // [3]! = [2][3] = v^3 + 2v + 2v^-1 + v^-3
  CHECK(qfact(3) == Laurent::v(3) + Laurent::term(1, 2) + Laurent::term(-1, 2) +
                        Laurent::v(-3));
  CHECK(qbinom(2, 1) == qint(2));
  CHECK(qint(0) == Laurent());
  CHECK(qint(1) == Laurent(1));
  CHECK_THROWS(qint(-1));
  CHECK_THROWS(qbinom(2, 3));
}

TEST_CASE("quantum number identities") {
  for (int l = 0; l <= 12; ++l)
    for (int k = 0; k <= 12; ++k) CHECK((qint(l) * qint(k)).symmetric());
  for (int l = 0; l <= 20; ++l) CHECK(qint(l).at_one() == l);
  for (int n = 0; n <= 8; ++n)
    for (int k = 0; k <= n; ++k) CHECK(qbinom(n, k).nonneg_coeffs());
}

TEST_CASE("exact division") {
  Laurent a = qfact(4), b = qint(3);
  auto q = Laurent::div_exact(a, b);
  REQUIRE(q.has_value());
  CHECK(*q * b == a);
  CHECK(!Laurent::div_exact(qint(3), qint(2)).has_value());
  CHECK(Laurent::div_exact(Laurent(), qint(2)).value() == Laurent());
}

TEST_CASE("rational scalars") {
  LaurentQ h(qint(2), 2);
  CHECK(h + h == LaurentQ(qint(2)));
  LaurentQ t(Laurent(3), 6);
  CHECK(t == LaurentQ(Laurent(1), 2));
  CHECK_THROWS(t.clear());
  CHECK((t + t).clear() == Laurent(1));
  LaurentQ z(Laurent(), 5);
  CHECK(z.is_zero());
  CHECK(z.den() == 1);
}
