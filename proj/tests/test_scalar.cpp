#include <random>

#include "doctest.h"
#include "oracle.hpp"

using namespace cotwist;

namespace {

Cyc random_cyc(std::mt19937_64& rng, long N) {
  std::vector<Cyc::Term> terms;
  for (int i = 0; i < 3; ++i) {
    long k = static_cast<long>(rng() % N);
    long num = static_cast<long>(rng() % 7) - 3, den = static_cast<long>(rng() % 3) + 1;
    terms.emplace_back(k, Rational(num, den));
  }
  return Cyc::from_terms(N, terms);
}

}  // namespace

TEST_CASE("roots of unity satisfy their minimal relations") {
  CHECK(Cyc::root(4, 1) * Cyc::root(4, 1) == Cyc(-1));
  CHECK((Cyc(1) + Cyc::root(3, 1) + Cyc::root(3, 2)).is_zero());
  CHECK(Cyc::root(12, 4) == Cyc::root(3, 1));
  CHECK(Cyc::root(5, 5) == Cyc(1));
  CHECK(Cyc::root(6, 3) == Cyc(-1));
}

TEST_CASE("field operations agree with complex evaluation") {
  std::mt19937_64 rng(7);
  for (long N : {3L, 4L, 5L, 12L, 20L}) {
    for (int trial = 0; trial < 40; ++trial) {
      Cyc a = random_cyc(rng, N), b = random_cyc(rng, N);
      CHECK(oracle::close(oracle::value(a + b), oracle::value(a) + oracle::value(b)));
      CHECK(oracle::close(oracle::value(a * b), oracle::value(a) * oracle::value(b)));
      CHECK(oracle::close(oracle::value(a.conj()), std::conj(oracle::value(a))));
      if (!a.is_zero()) {
        CHECK(oracle::close(oracle::value(a.inverse()), 1.0 / oracle::value(a), 1e-7));
        CHECK((a * a.inverse()).is_one());
      }
      CHECK((a == b) == oracle::close(oracle::value(a), oracle::value(b)));
    }
  }
}

TEST_CASE("mixed orders embed into a common field") {
  Cyc a = Cyc::root(3, 1), b = Cyc::root(4, 1);
  Cyc s = a + b;
  CHECK(s.order() % 12 == 0);
  CHECK(oracle::close(oracle::value(s), oracle::root(3, 1) + oracle::root(4, 1)));
  CHECK(a.embed(12) == a);
}

TEST_CASE("zero detection uses the cyclotomic polynomial") {
  Cyc z = Cyc::from_terms(5, {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}});
  CHECK(z.is_zero());
  CHECK(z.reduced() == std::vector<Rational>(4, Rational(0)));
  CHECK_THROWS_AS(z.inverse(), DivisionByZero);
}

TEST_CASE("canonical strings parse back to the same value") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Cyc a = random_cyc(rng, 12);
    CHECK(Cyc::parse(a.str()) == a);
    CHECK(Cyc::parse(a.str()).str() == a.str());
  }
  CHECK(Cyc::root(3, 2).str() == "zeta(3)^2");
  CHECK(Cyc(Rational(-1, 2)).str() == "-1/2");
  CHECK(Cyc::parse("1/2 + -1/4 * zeta(3)") == Cyc(Rational(1, 2)) - Cyc(Rational(1, 4)) * Cyc::root(3, 1));
}

TEST_CASE("monomial recognition") {
  Rational q;
  long d = 0, k = 0;
  CHECK((Cyc(Rational(3, 2)) * Cyc::root(12, 5)).as_monomial(q, d, k));
  CHECK(q == Rational(3, 2));
  CHECK(oracle::close(oracle::root(d, k), oracle::root(12, 5)));
  CHECK_FALSE((Cyc(1) + Cyc::root(4, 1)).as_monomial(q, d, k));
}

TEST_CASE("Euler phi and cyclotomic polynomials") {
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(5) == 4);
  CHECK(euler_phi(1) == 1);
  CHECK(cyclotomic_poly(12) == std::vector<long>{1, 0, -1, 0, 1});
  CHECK(cyclotomic_poly(3) == std::vector<long>{1, 1, 1});
}
