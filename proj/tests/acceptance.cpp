#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "cotwist/models.hpp"

using namespace cotwist;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ModelParams torus(long p, long q) {
  ModelParams mp;
  mp.model = "nc_torus";
  mp.p = p;
  mp.q = q;
  return mp;
}

const SampleSpec kSpec{4, 100, 42};

std::string first_failure(const Report& r) {
  const ReportEntry* f = r.first_failure();
  return f ? f->check_id + ": " + f->witness : "";
}

Outcome require_ok(const Report& r, const std::string& what) {
  if (!r.ok()) return {false, first_failure(r)};
  return {true, what + ", " + std::to_string(r.entries().size()) + " checks"};
}

Outcome exhaustive_identities() {
  ModelParams mp;
  mp.model = "finite_bicharacter";
  mp.n = 5;
  mp.pairing = "ad-bc";
  auto t0 = Clock::now();
  auto b = build_model(mp, kSpec);
  Report r = run_suite(b, "cocycle", kSpec);
  const double secs = seconds_since(t0);
  if (!r.ok()) return {false, first_failure(r)};
  for (const char* id : {"cocycle.cocycle.cocycle_eq", "cocycle.cocycle.equivalent_ii", "cocycle.cocycle.equivalent_iii",
                         "cocycle.cocycle.equivalent_iv", "cocycle.cocycle.unital", "cocycle.cocycle.convolution_inverse",
                         "cocycle.unitarity.unitary_gamma", "cocycle.unitarity.unitary_gammabar",
                         "cocycle.unitarity.uv_inverses", "cocycle.unitarity.vbar_conjugation",
                         "cocycle.unitarity.exchange_vbar_gamma", "cocycle.unitarity.exchange_gamma_vbar",
                         "cocycle.unitarity.u_exchange"}) {
    const ReportEntry* e = r.find(id);
    if (!e) return {false, std::string("missing check ") + id};
    if (!is_exhaustive(*e)) return {false, std::string("not exhaustive: ") + id};
  }
  if (secs >= 60) return {false, "runtime " + std::to_string(secs) + " s exceeds 60 s"};
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu exhaustive checks on Z5 x Z5 in %.2f s", r.entries().size(), secs);
  return {true, buf};
}

Outcome cocommutative_collapse() {
  SampleSpec spec = kSpec;
  spec.box = 6;
  auto b = build_model(torus(1, 3), spec);
  Report r = run_suite(b, "cocycle", spec);
  const ReportEntry* e = r.find("cocycle.cocommutative_collapse");
  if (!e) return {false, "missing check"};
  if (e->status != Status::pass) return {false, e->witness};
  return {true, "product and star tables on box 6 (" + e->sample_spec + ")"};
}

Outcome round_trip() {
  auto b = build_model(torus(1, 3), kSpec);
  const auto base = twist_document(b, "base", 2);
  const auto back = twist_document(b, "roundtrip", 2);
  for (const char* key : {"product", "star", "wedge", "d", "g", "nabla", "hermitian"})
    if (!base["tables"].contains(key) || base["tables"][key].empty()) return {false, std::string("table missing: ") + key};
  if (base.dump(2) != back.dump(2)) return {false, "emitted documents differ"};
  if (base.dump() == twist_document(b, "twisted", 2).dump()) return {false, "twist did not change the tables"};
  Report r = correspondence_roundtrips(b, kSpec);
  if (!r.ok()) return {false, first_failure(r)};
  return {true, std::to_string(base.dump(2).size()) + " bytes identical after gamma then gammabar"};
}

Outcome hermitian_coherence() {
  auto b = build_model(torus(1, 3), kSpec);
  if (hermitian_from_real(b.mg).h != b.Hg.h) return {false, "H_{g_gamma} != (H_g)_gamma as tables"};
  Report r = verify_hermitian_coherence(b.mg, b.Hg, kSpec);
  r.merge(verify_twisted_hermitian(b.H, b.Hg, b.t, kSpec));
  if (!r.ok()) return {false, first_failure(r)};
  const ReportEntry* rel = r.find("pairing_relation");
  if (!rel) return {false, "missing pairing relation check"};
  return {true, "tables equal; pairing relation on " + rel->sample_spec};
}

Outcome twisted_levi_civita() {
  auto b = build_model(torus(1, 3), kSpec);
  if (!same_tables(b.lcg, twist_connection(b.lc, b.Cg, b.t))) return {false, "twisted connection tables differ"};
  return require_ok(levi_civita_verify(b.lcg, b.mg, kSpec), "torsion free and metric in the twisted calculus");
}

Outcome chern() {
  auto b = build_model(torus(1, 3), kSpec);
  ChernResult c = chern_solve(*b.h10, b.split.h10, 1, b.N);
  ChernResult cg = chern_solve(*b.h10g, b.split_g.h10, 1, b.N);
  if (!same_tables(cg.conn, twist_connection(c.conn, b.Cg, b.t))) return {false, "twisted Chern connection != phi^-1 Gamma(nabla_Ch)"};
  Report r = verify_chern(*b.h10, b.split.h10, c.conn, kSpec);
  r.merge(verify_chern(*b.h10g, b.split_g.h10, cg.conn, kSpec));
  if (!r.ok()) return {false, first_failure(r)};
  return {true, "unique solutions (" + std::to_string(c.unknowns) + " and " + std::to_string(cg.unknowns) +
                    " unknowns), twisted = phi^-1 Gamma(nabla_Ch)"};
}

Outcome levi_civita_splitting() {
  std::string detail;
  for (long q : {3L, 5L}) {
    auto t0 = Clock::now();
    auto b = build_model(torus(1, q), kSpec);
    Report r = run_suite(b, "main", kSpec);
    const double secs = seconds_since(t0);
    if (!r.ok()) return {false, "nc_torus(1," + std::to_string(q) + ") " + first_failure(r)};
    if (!r.find("main.main.direct_sum_10_sampled") || !r.find("main.main.direct_sum_01_sampled"))
      return {false, "missing direct sum checks"};
    if (secs >= 120) return {false, "runtime exceeds 120 s for q=" + std::to_string(q)};
    char buf[96];
    std::snprintf(buf, sizeof buf, "%snc_torus(1,%ld) %.2f s", detail.empty() ? "" : "; ", q, secs);
    detail += buf;
  }
  return {true, detail};
}

Outcome bar_functor() {
  auto b = build_model(torus(1, 3), kSpec);
  Report r = run_suite(b, "barfunctor", kSpec);
  for (const char* id : {"barfunctor.instrument.hexagon", "barfunctor.instrument.bb", "barfunctor.omega.hexagon",
                         "barfunctor.omega.bb", "barfunctor.omega.star_object"})
    if (!r.find(id)) return {false, std::string("missing check ") + id};
  return require_ok(r, "torus one-forms and the instrument module");
}

Outcome kahler() {
  auto b = build_model(torus(1, 3), kSpec);
  Report r = kahler_checks(*b.C, b.cs, b.kappa, kSpec);
  r.merge(kahler_checks(*b.Cg, b.cs, b.kappa_g, kSpec), "twisted");
  for (const char* id : {"kappa_closed", "lefschetz", "twisted.kappa_closed", "twisted.lefschetz"})
    if (!r.find(id)) return {false, std::string("missing check ") + id};
  return require_ok(r, "untwisted and twisted");
}

Outcome fault_sensitivity() {
  size_t caught = 0;
  for (const auto& p : perturbations()) {
    auto b = build_model(p.model, kSpec, p.id);
    Report r = run_suite(b, p.suite, kSpec);
    const ReportEntry* f = r.first_failure();
    if (!f || f->witness.empty()) return {false, p.name + " not caught by suite " + p.suite};
    if (run_suite(b, "all", kSpec).ok()) return {false, p.name + " passes all"};
    ++caught;
  }
  return {true, std::to_string(caught) + " perturbations caught with witnesses"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"exhaustive cocycle identity suite on C[Z5 x Z5]", exhaustive_identities},
      {"cocommutative collapse on box 6", cocommutative_collapse},
      {"gamma then gammabar round trip of every table", round_trip},
      {"Hermitian coherence H_{g_gamma} = (H_g)_gamma", hermitian_coherence},
      {"twisted Levi-Civita connection", twisted_levi_civita},
      {"Chern connection uniqueness and twist", chern},
      {"Levi-Civita = Chern (1,0) + Chern (0,1), twisted", levi_civita_splitting},
      {"bar functor coherence and star object", bar_functor},
      {"Kahler form layer", kahler},
      {"fault sensitivity", fault_sensitivity},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %2zu: %s  %s  [%s]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
