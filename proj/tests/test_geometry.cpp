#include "doctest.h"
#include "oracle.hpp"

#include "cotwist/models.hpp"

using namespace cotwist;

namespace {

const SampleSpec kSpec{3, 30, 7};

const ModelBundle& torus(long p) {
  static std::map<long, ModelBundle> cache;
  auto it = cache.find(p);
  if (it == cache.end()) {
    ModelParams mp;
    mp.model = "nc_torus";
    mp.p = p;
    mp.q = 3;
    it = cache.emplace(p, build_model(mp, kSpec)).first;
  }
  return it->second;
}

bool all_zero(const std::vector<Vec>& t) {
  for (const auto& v : t)
    if (!vis_zero(v)) return false;
  return true;
}

}  // namespace

TEST_CASE("flat metric pairs the basis orthonormally") {
  const auto& b = torus(0);
  const auto& B = *b.B;
  Vec w1 = vunit(B, 2, 0), w2 = vunit(B, 2, 1);
  CHECK(metric_pair(b.m, w1, w1) == B.unit);
  CHECK(metric_pair(b.m, w1, w2).is_zero());
  CHECK(metric_pair_tensor(b.m, b.m.g) == Cyc(2) * B.unit);
  CHECK(verify_metric(b.m, kSpec).ok());
  CHECK(verify_diamond(b.m, b.cs).ok());
}

TEST_CASE("Levi-Civita connection of the flat torus vanishes on the basis") {
  const auto& b = torus(0);
  CHECK(all_zero(b.lc.nabla));
  CHECK(levi_civita_verify(b.lc, b.m, kSpec).ok());
  CHECK(verify_connection(b.lc, kSpec).ok());
  // nabla(x w1) = x w1 (x) w1, from the Leibniz rule
  Vec v = vlmul(*b.B, Elem::basis(Label{1, 0}), vunit(*b.B, 2, 0));
  Vec nv = connection_apply(b.lc, v);
  CHECK(nv[0] == Elem::basis(Label{1, 0}));
  CHECK(nv[1].is_zero());
  CHECK(nv[2].is_zero());
  CHECK(nv[3].is_zero());
}

TEST_CASE("twisted Levi-Civita connection is torsion free and metric") {
  const auto& b = torus(1);
  CHECK(levi_civita_verify(b.lcg, b.mg, kSpec).ok());
  CHECK(verify_twisted_connection(b.lc, b.lcg, b.t, kSpec).ok());
  CHECK(verify_twisted_metric(b.m, b.mg, b.t, kSpec).ok());
}

TEST_CASE("Hermitian metric of the flat metric: <w+, conj w+> = -2") {
  const auto& b = torus(1);
  const auto& B = *b.B;
  Vec wp{B.unit, Cyc::root(4, 1) * B.unit};
  CHECK(herm_pair(b.H, wp, vbar(B, wp)) == Cyc(-2) * B.unit);
  CHECK(herm_pair(b.H, wp, vbar(B, vbar(B, vbar(B, wp)))) == Cyc(-2) * B.unit);
  Vec wm{B.unit, -Cyc::root(4, 1) * B.unit};
  CHECK(herm_pair(b.H, wp, vbar(B, wm)).is_zero());
  CHECK(verify_hermitian(b.H, kSpec, &b.m).ok());
  CHECK(verify_split(b.H, b.cs).ok());
}

TEST_CASE("twisted Hermitian metric agrees with the twisted real metric") {
  const auto& b = torus(1);
  CHECK(hermitian_from_real(b.mg).h == b.Hg.h);
  CHECK(verify_twisted_hermitian(b.H, b.Hg, b.t, kSpec).ok());
  CHECK(verify_hermitian_coherence(b.mg, b.Hg, kSpec).ok());
}

TEST_CASE("real and Hermitian metrics correspond") {
  const auto& b = torus(1);
  Metric back = real_from_hermitian(b.H, b.C);
  CHECK(back.pairing == b.m.pairing);
  CHECK(back.g == b.m.g);
}

TEST_CASE("Chern connection on (1,0)-forms is zero on the frame and unique") {
  const auto& b = torus(1);
  ChernResult ch = chern_solve(*b.h10, b.split.h10, 1, b.N);
  CHECK(all_zero(ch.conn.nabla));
  CHECK(ch.unknowns > 0);
  CHECK(verify_chern(*b.h10, b.split.h10, ch.conn, kSpec).ok());
  ChernResult chg = chern_solve(*b.h10g, b.split_g.h10, 1, b.N);
  CHECK(same_tables(chg.conn, twist_connection(ch.conn, b.Cg, b.t)));
  CHECK(verify_chern(*b.h10g, b.split_g.h10, chg.conn, kSpec).ok());
}

TEST_CASE("Levi-Civita splits as the sum of Chern connections") {
  const auto& b = torus(1);
  auto c10 = chern_solve(*b.h10g, b.split_g.h10, 1, b.N).conn;
  auto c01 = chern_solve(*b.h01g, b.split_g.h01, 1, b.N).conn;
  CHECK(verify_direct_sum(b.lcg, c10, b.cs, c01, b.opp, kSpec).ok());
}

TEST_CASE("a Hermitian metric that is not conjugate symmetric is rejected") {
  const auto& b = torus(1);
  Hermitian H = b.H;
  H.h[0][1] = b.B->unit;
  CHECK_FALSE(verify_hermitian(H, kSpec).ok());
}

TEST_CASE("conjugate connection and its twist") {
  const auto& b = torus(1);
  CHECK(verify_conj_connection(b.lc, kSpec).ok());
  CHECK(verify_conj_connection(b.lcg, kSpec).ok());
  CHECK(verify_conj_twist(b.lc, b.lcg, b.t, kSpec).ok());
}

TEST_CASE("star object on one-forms") {
  const auto& b = torus(1);
  CHECK(verify_star_object(*b.C, *b.Cg, b.t, kSpec).ok());
}
