#include "doctest.h"
#include "oracle.hpp"

#include "cotwist/relhopf.hpp"

using namespace cotwist;

namespace {

TwistContext nc_torus_context(long p, long q, long N) {
  Rational t(p, q);
  t.canonicalize();
  auto c = certify(theta_cocycle(2, {{Rational(0), t}, {Rational(-t), Rational(0)}}, N), SampleSpec{3, 30, 1});
  auto B = std::make_shared<ComoduleAlgebra>(*torus_algebra());
  B->N = N;
  return make_twist_context(B, c);
}

const Label X{1, 0}, Y{0, 1}, XY{1, 1};

}  // namespace

TEST_CASE("twisted torus generators obey y x = zeta_3^2 x y") {
  auto t = nc_torus_context(1, 3, 12);
  const auto& Bg = *t.Bg;
  Cyc xy = Bg.mult(X, Y).coeff(XY), yx = Bg.mult(Y, X).coeff(XY);
  CHECK(yx == Cyc::root(3, 2) * xy);
  CHECK(oracle::close(oracle::value(yx / xy), oracle::root(3, 2)));
}

TEST_CASE("commutation phase is F(y, x) / F(x, y) with F = exp(2 pi i <<theta m, n>>)") {
  // theta = [[0, t], [-t, 0]]: <<theta m, n>> = t (m_2 n_1 - m_1 n_2)
  auto F = [](double t, const Label& m, const Label& n) {
    const double e = t * (m[1] * n[0] - m[0] * n[1]);
    return oracle::C{std::cos(2 * std::numbers::pi * e), std::sin(2 * std::numbers::pi * e)};
  };
  for (auto [p, q] : {std::pair<long, long>{1, 5}, {2, 7}, {3, 4}, {1, 3}}) {
    auto t = nc_torus_context(p, q, std::lcm(4L, q));
    Cyc r = t.Bg->mult(Y, X).coeff(XY) / t.Bg->mult(X, Y).coeff(XY);
    const double th = static_cast<double>(p) / static_cast<double>(q);
    CHECK(oracle::close(oracle::value(r), F(th, Y, X) / F(th, X, Y)));
  }
}

TEST_CASE("twisted star of a torus monomial is the untwisted star") {
  auto t = nc_torus_context(1, 3, 12);
  for (const auto& l : t.B->labels(3)) CHECK(t.Bg->star(l) == t.B->star(l));
}

TEST_CASE("twisted generators stay unitary") {
  auto t = nc_torus_context(1, 3, 12);
  const auto& Bg = *t.Bg;
  for (const Label& g : {X, Y}) {
    Elem s = Bg.star(g);
    CHECK(bmult(Bg, s, Elem::basis(g)) == Bg.unit);
    CHECK(bmult(Bg, Elem::basis(g), s) == Bg.unit);
  }
}

TEST_CASE("twisted comodule algebra passes its axioms") {
  auto t = nc_torus_context(1, 3, 12);
  SampleSpec spec{3, 40, 2};
  CHECK(verify_comodule_algebra(*t.B, spec).ok());
  CHECK(verify_comodule_algebra(*t.Bg, spec).ok());
}

TEST_CASE("phi and its inverse are mutually inverse on samples") {
  auto t = nc_torus_context(1, 3, 12);
  Sampler s(3);
  for (int i = 0; i < 30; ++i) {
    Vec v = sample_vec(*t.Bg, 2, 3, s), w = sample_vec(*t.Bg, 2, 3, s);
    Vec x = vtensor(*t.Bg, v, w);
    CHECK(phi_inv_nf(t, phi_nf(t, x, 2, 2), 2, 2) == x);
  }
}

TEST_CASE("phi of generators picks up the cocycle value") {
  auto t = nc_torus_context(1, 3, 12);
  Vec v{Elem::basis(X)}, w{Elem::basis(Y)};
  Vec out = phi_pure(t, v, w);
  REQUIRE(out.size() == 1);
  CHECK(out[0] == t.c->gamma(X, Y) * Elem::basis(XY));
}

TEST_CASE("bar functor conditions hold on the instrument module") {
  auto t = nc_torus_context(1, 3, 12);
  FreeModule I{"B", {"1"}};
  SampleSpec spec{3, 30, 4};
  CHECK(verify_bar_functor(t, I, I, spec).ok());
  CHECK(verify_module(*t.B, I, spec).ok());
}

TEST_CASE("omitting Vbar breaks N for a non-skew bicharacter") {
  auto A = group_algebra({5, 5});
  std::vector<std::vector<Rational>> th{{Rational(0), Rational(0)}, {Rational(1, 5), Rational(0)}};
  auto c = certify(bicharacter_cocycle(A, Bicharacter{th, 5}, "ad"), SampleSpec{3, 30, 1});
  auto B = std::make_shared<ComoduleAlgebra>(*regular_comodule(A));
  B->N = 20;
  auto t = make_twist_context(B, c);
  FreeModule I{"B", {"1"}};
  SampleSpec spec{3, 30, 4};
  CHECK(verify_bar_functor(t, I, I, spec).ok());
  CHECK_FALSE(verify_bar_functor(t, I, I, spec, true).ok());
}

TEST_CASE("N followed by its inverse is the identity") {
  auto t = nc_torus_context(1, 3, 12);
  Sampler s(9);
  for (int i = 0; i < 20; ++i) {
    Vec z = sample_vec(*t.Bg, 1, 3, s);
    CHECK(frak_N_inv(t, frak_N(t, z)) == z);
  }
}
