#include "doctest.h"
#include "oracle.hpp"

#include "cotwist/cocycle.hpp"

using namespace cotwist;

namespace {

std::vector<std::vector<Rational>> skew(long p, long q) {
  Rational t(p, q);
  t.canonicalize();
  return {{Rational(0), t}, {Rational(-t), Rational(0)}};
}

// exp(2 pi i sum theta_ij m_j n_i) in floating point.
oracle::C theta_value(double t12, const Label& m, const Label& n) {
  const double e = t12 * m[1] * n[0] - t12 * m[0] * n[1];
  return {std::cos(2 * std::numbers::pi * e), std::sin(2 * std::numbers::pi * e)};
}

// Cocycle from F = zeta_3 e + (1 - zeta_3) p, p = (e + s)/2 on S3.
CocyclePtr s3_coboundary() {
  auto A = function_algebra(symmetric_group(3));
  const Cyc z = Cyc::root(3, 1), h = Cyc(Rational(1, 2));
  LabelFn f = [z, h](const Label& l) {
    if (l[0] == 0) return z + h * (Cyc(1) - z);
    if (l[0] == 1) return h * (Cyc(1) - z);
    return Cyc();
  };
  LabelFn fb = [z, h](const Label& l) {
    const Cyc zi = z.conj();
    if (l[0] == 0) return zi + h * (Cyc(1) - zi);
    if (l[0] == 1) return h * (Cyc(1) - zi);
    return Cyc();
  };
  return coboundary_cocycle(A, f, fb, "coboundary", 3);
}

}  // namespace

TEST_CASE("theta cocycle values match the exponential formula") {
  auto c = theta_cocycle(2, skew(1, 3), 12);
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int u = -2; u <= 2; ++u)
        for (int v = -2; v <= 2; ++v) {
          Label m{a, b}, n{u, v};
          CHECK(oracle::close(oracle::value(c->gamma(m, n)), theta_value(1.0 / 3, m, n)));
          CHECK((c->gamma(m, n) * c->gamma_bar(m, n)).is_one());
        }
}

TEST_CASE("theta cocycle certifies as a unitary cocycle") {
  Report r;
  auto c = certify(theta_cocycle(2, skew(1, 3), 12), SampleSpec{3, 50, 5}, &r);
  CHECK(r.ok());
  CHECK(c->cocycle_verified);
  CHECK(c->unitary);
  CHECK(c->unital);
}

TEST_CASE("non-skew theta is rejected") {
  CHECK_THROWS_AS(theta_cocycle(2, {{Rational(0), Rational(1, 3)}, {Rational(0), Rational(0)}}, 12), Error);
}

TEST_CASE("scaling one cocycle value breaks certification") {
  auto c = theta_cocycle(2, skew(1, 3), 12);
  PairFunctional g;
  auto orig = c->gamma;
  g.eval = [orig](const Label& a, const Label& b) {
    Cyc v = orig(a, b);
    return a == Label{1, 0} && b == Label{0, 1} ? Cyc(2) * v : v;
  };
  Report r;
  auto bad = certify(make_cocycle("scaled", c->A, g, c->gamma_bar, 12), SampleSpec{3, 50, 5}, &r);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(bad->unitary);
}

TEST_CASE("finite bicharacter on Z5 x Z5 passes the exhaustive suites") {
  auto A = group_algebra({5, 5});
  std::vector<std::vector<Rational>> th{{Rational(0), Rational(-1, 5)}, {Rational(1, 5), Rational(0)}};
  Report r;
  auto c = certify(bicharacter_cocycle(A, Bicharacter{th, 5}, "b"), SampleSpec{4, 50, 1}, &r);
  CHECK(r.ok());
  for (const auto& e : r.entries()) CHECK(is_exhaustive(e));
}

TEST_CASE("coboundary on Fun(S3) satisfies the cocycle equation numerically") {
  auto c = s3_coboundary();
  FiniteGroup G = symmetric_group(3);
  auto g = [&](int a, int b) { return oracle::value(c->gamma(Label{a}, Label{b})); };
  auto gb = [&](int a, int b) { return oracle::value(c->gamma_bar(Label{a}, Label{b})); };
  // delta_g has coproduct sum over h k = g of delta_h (x) delta_k
  auto split = [&](int x) {
    std::vector<std::pair<int, int>> out;
    for (int h = 0; h < 6; ++h) out.emplace_back(h, G.table[G.inverse[h]][x]);
    return out;
  };
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      oracle::C conv = 0;
      for (auto [a1, a2] : split(a))
        for (auto [b1, b2] : split(b)) conv += g(a1, b1) * gb(a2, b2);
      CHECK(oracle::close(conv, a == G.identity && b == G.identity ? 1.0 : 0.0));
      // unitarity: conj gamma(a, b) = gammabar(S(a)^*, S(b)^*) and delta_g^* = delta_g
      CHECK(oracle::close(std::conj(g(a, b)), gb(G.inverse[a], G.inverse[b])));
      for (int x = 0; x < 6; ++x) {
        oracle::C lhs = 0, rhs = 0;
        for (auto [a1, a2] : split(a))
          for (auto [b1, b2] : split(b))
            if (a2 == b2) lhs += g(a1, b1) * g(a2, x);
        for (auto [b1, b2] : split(b))
          for (auto [x1, x2] : split(x))
            if (b2 == x2) rhs += g(b1, x1) * g(a, b2);
        CHECK(oracle::close(lhs, rhs));
      }
    }
}

TEST_CASE("coboundary cocycle certifies and twists Fun(S3)") {
  Report r;
  auto c = certify(s3_coboundary(), SampleSpec{3, 50, 1}, &r);
  CHECK(r.ok());
  auto th = twist_hopf(c);
  CHECK(verify_hopf_axioms(*th.twisted, SampleSpec{3, 50, 1}).ok());
}

TEST_CASE("cocommutative algebras are unchanged by the twist") {
  auto c = certify(theta_cocycle(2, skew(1, 3), 12), SampleSpec{3, 50, 5});
  auto th = twist_hopf(c);
  for (const auto& m : c->A->labels(2))
    for (const auto& n : c->A->labels(2)) CHECK(th.twisted->mult(m, n) == c->A->mult(m, n));
  for (const auto& m : c->A->labels(2)) CHECK(th.twisted->star(m) == c->A->star(m));
}

TEST_CASE("the inverse cocycle untwists the twisted Hopf algebra") {
  auto c = certify(s3_coboundary(), SampleSpec{3, 50, 1});
  auto th = twist_hopf(c);
  auto back = twist_hopf(certify(inverse_cocycle(th), SampleSpec{3, 50, 1}));
  for (int a = 0; a < 6; ++a) {
    CHECK(back.twisted->antipode(Label{a}) == c->A->antipode(Label{a}));
    for (int b = 0; b < 6; ++b) CHECK(back.twisted->mult(Label{a}, Label{b}) == c->A->mult(Label{a}, Label{b}));
  }
}

TEST_CASE("trivial cocycle is the counit pairing") {
  auto A = group_algebra({0, 0});
  auto c = trivial_cocycle(A);
  CHECK(c->gamma(Label{1, 2}, Label{3, 4}) == Cyc(1));
  CHECK(c->U(Label{2, 2}) == Cyc(1));
}
