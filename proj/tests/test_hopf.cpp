#include "doctest.h"

#include "cotwist/hopf.hpp"

using namespace cotwist;

TEST_CASE("lattice group algebra is grouplike and cocommutative") {
  auto A = group_algebra({0, 0});
  Label m{2, -1}, n{-3, 4};
  CHECK(A->mult(m, n) == Elem::basis(Label{-1, 3}));
  Tensor t = A->coproduct(m);
  CHECK(t.size() == 1);
  CHECK(t.terms().begin()->first == LabelTuple{m, m});
  CHECK(A->antipode(m) == Elem::basis(Label{-2, 1}));
  CHECK(A->star(m) == Elem::basis(Label{-2, 1}));
  CHECK(A->counit(m) == Cyc(1));
  CHECK(A->cocommutative);
}

TEST_CASE("symmetric group S3 has a consistent multiplication table") {
  FiniteGroup G = symmetric_group(3);
  REQUIRE(G.order == 6);
  for (int a = 0; a < 6; ++a) {
    CHECK(G.table[a][G.inverse[a]] == G.identity);
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 6; ++c) CHECK(G.table[G.table[a][b]][c] == G.table[a][G.table[b][c]]);
  }
  int non_commuting = 0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) non_commuting += G.table[a][b] != G.table[b][a];
  CHECK(non_commuting > 0);
}

TEST_CASE("function algebra on S3: delta functions are orthogonal idempotents") {
  auto A = function_algebra(symmetric_group(3));
  for (int g = 0; g < 6; ++g)
    for (int h = 0; h < 6; ++h) {
      Elem p = A->mult(Label{g}, Label{h});
      CHECK(p == (g == h ? Elem::basis(Label{g}) : Elem()));
    }
  Cyc sum;
  for (const auto& [t, c] : A->coproduct(Label{0})) sum += c;
  CHECK(sum == Cyc(6));
  CHECK_FALSE(A->cocommutative);
}

TEST_CASE("Hopf axioms hold on the shipped algebras") {
  SampleSpec spec{3, 40, 1};
  CHECK(verify_hopf_axioms(*group_algebra({0, 0}), spec).ok());
  CHECK(verify_hopf_axioms(*group_algebra({5, 5}), spec).ok());
  CHECK(verify_hopf_axioms(*function_algebra(symmetric_group(3)), spec).ok());
}

TEST_CASE("a corrupted antipode is reported with a witness") {
  auto P = std::make_shared<HopfPresentation>(*function_algebra(symmetric_group(3)));
  auto orig = P->antipode;
  P->antipode = [orig](const Label& l) { return l[0] == 1 ? Elem::basis(Label{3}) : orig(l); };
  Report r = verify_hopf_axioms(*P, SampleSpec{3, 40, 1});
  const ReportEntry* f = r.first_failure();
  REQUIRE(f != nullptr);
  CHECK(!f->witness.empty());
}

TEST_CASE("iterated coproduct of a group element repeats it") {
  auto A = group_algebra({0, 0});
  Tensor t = iterated_coproduct(*A, Label{1, 2}, 2);
  CHECK(t.arity() == 3);
  CHECK(t.size() == 1);
}
