#include "doctest.h"

#include "cotwist/calculus.hpp"

using namespace cotwist;

namespace {

struct Torus {
  TwistContext t;
  CalcPtr C, Cg;
  ComplexStructure cs = torus_complex_structure(12);
};

Torus make_torus(long p) {
  Rational th(p, 3);
  th.canonicalize();
  auto c = certify(theta_cocycle(2, {{Rational(0), th}, {Rational(-th), Rational(0)}}, 12), SampleSpec{3, 30, 1});
  auto B = std::make_shared<ComoduleAlgebra>(*torus_algebra());
  B->N = 12;
  Torus T{make_twist_context(B, c), nullptr, nullptr};
  T.C = torus_calculus(T.t.B);
  T.Cg = twist_calculus(T.C, T.t);
  return T;
}

const Label X{1, 0}, Y{0, 1};

}  // namespace

TEST_CASE("torus differential on monomials") {
  auto T = make_torus(0);
  const auto& C = *T.C;
  Form d = dform(C, form_of(C, Elem::basis(Label{2, -1})));
  CHECK(d.deg == 1);
  CHECK(d.c[0] == Cyc(2) * Elem::basis(Label{2, -1}));
  CHECK(d.c[1] == Cyc(-1) * Elem::basis(Label{2, -1}));
  CHECK(fis_zero(dform(C, d)));
}

TEST_CASE("basis one-forms anticommute and are anti-selfadjoint") {
  auto T = make_torus(1);
  for (const auto& C : {T.C, T.Cg}) {
    Form w1 = form_unit(*C, 1, 0), w2 = form_unit(*C, 1, 1);
    CHECK(wedge(*C, w2, w1) == fscale(Cyc(-1), wedge(*C, w1, w2)));
    CHECK(fis_zero(wedge(*C, w1, w1)));
    CHECK(star_form(*C, w1) == fscale(Cyc(-1), w1));
  }
}

TEST_CASE("twisted wedge of exact forms picks up the commutation phase") {
  auto T = make_torus(1);
  const auto& Cg = *T.Cg;
  Form dx = dform(Cg, form_of(Cg, Elem::basis(X))), dy = dform(Cg, form_of(Cg, Elem::basis(Y)));
  // dy ^_g dx = -zeta_3^2 dx ^_g dy
  CHECK(wedge(Cg, dy, dx) == fscale(-Cyc::root(3, 2), wedge(Cg, dx, dy)));
  CHECK(wedge_formula(T.t, *T.C, dy, dx) == wedge(Cg, dy, dx));
}

TEST_CASE("calculus axioms hold untwisted and twisted") {
  auto T = make_torus(1);
  SampleSpec spec{3, 30, 2};
  CHECK(verify_calculus(*T.C, spec).ok());
  CHECK(verify_calculus(*T.Cg, spec).ok());
  CHECK(verify_twisted_formulas(T.t, *T.C, *T.Cg, spec).ok());
}

TEST_CASE("complex structure on the torus splits one-forms") {
  auto T = make_torus(1);
  CHECK(T.cs.indices(1, 0).size() == 1);
  CHECK(T.cs.indices(0, 1).size() == 1);
  CHECK(T.cs.indices(1, 1).size() == 1);
  Form wp = fadd(form_unit(*T.C, 1, 0), fscale(Cyc::root(4, 1), form_unit(*T.C, 1, 1)));
  CHECK(fis_zero(project(*T.C, T.cs, wp, 0, 1)));
  CHECK(project(*T.C, T.cs, wp, 1, 0) == wp);
  // the star of a (1,0)-form is a (0,1)-form
  Form ws = star_form(*T.C, wp);
  CHECK(fis_zero(project(*T.C, T.cs, ws, 1, 0)));
  SampleSpec spec{3, 30, 2};
  CHECK(verify_complex_structure(*T.C, T.cs, spec).ok());
  CHECK(verify_complex_structure(*T.Cg, T.cs, spec).ok());
  CHECK_THROWS_AS(torus_complex_structure(6), Error);
}

TEST_CASE("fundamental form of the flat metric is -2 w1 ^ w2") {
  auto T = make_torus(0);
  std::vector<std::vector<Cyc>> gram{{Cyc(1), Cyc(0)}, {Cyc(0), Cyc(1)}};
  Form kappa = fundamental_form(*T.C, T.cs, gram);
  CHECK(kappa == fscale(Cyc(-2), form_unit(*T.C, 2, 0)));
  CHECK(kahler_checks(*T.C, T.cs, kappa, SampleSpec{3, 30, 2}).ok());
  Form kg = fundamental_form(*T.Cg, T.cs, gram);
  CHECK(kahler_checks(*T.Cg, T.cs, kg, SampleSpec{3, 30, 2}).ok());
}

TEST_CASE("holomorphic structure on (1,0)-forms is flat and twists") {
  auto T = make_torus(1);
  auto h = holomorphic_from_factorizable(T.C, T.cs);
  auto hg = twist_holomorphic(h, T.Cg, T.t);
  SampleSpec spec{3, 20, 2};
  CHECK(verify_holomorphic(*h, spec).ok());
  CHECK(verify_holomorphic(*hg, spec).ok());
  CHECK(verify_holomorphic_transport(*h, *hg, spec).ok());
  // dbar of the frame element vanishes
  CHECK(vis_zero(dbar_E(*h, vunit(*T.C->B, 1, 0))));
}

TEST_CASE("a wrong wedge sign makes the structure non-factorizable") {
  auto T = make_torus(1);
  auto C = std::make_shared<Calculus>(*T.C);
  C->wedge[{1, 1}][2] = Vec{C->B->unit};
  CHECK_THROWS_WITH_AS(factorization_inverse(*C, T.cs), doctest::Contains("not factorizable"), Error);
  CHECK_FALSE(verify_calculus(*C, SampleSpec{3, 30, 2}).ok());
}
