#include <set>

#include "doctest.h"

#include "cotwist/models.hpp"
#include "cotwist/sweep.hpp"

using namespace cotwist;

namespace {

const SampleSpec kSpec{3, 20, 42};

ModelParams params(const std::string& model, long p = 1, long q = 3) {
  ModelParams mp;
  mp.model = model;
  mp.p = p;
  mp.q = q;
  return mp;
}

std::string report_text(const ModelBundle& b, const std::string& suite) {
  return run_suite(b, suite, kSpec).to_json(false);
}

}  // namespace

TEST_CASE("cyclotomic order is lcm(4, q)") {
  CHECK(build_model(params("nc_torus", 1, 3), kSpec).N == 12);
  CHECK(build_model(params("nc_torus", 1, 5), kSpec).N == 20);
  CHECK(build_model(params("nc_torus", 1, 2), kSpec).N == 4);
  CHECK(build_model(params("classical_torus"), kSpec).N == 4);
}

TEST_CASE("nc_torus with p = 0 reproduces the classical torus") {
  auto a = build_model(params("nc_torus", 0, 3), kSpec);
  auto c = build_model(params("classical_torus"), kSpec);
  CHECK(twist_document(a, "twisted", 2)["tables"] == twist_document(c, "twisted", 2)["tables"]);
  CHECK(twist_document(a, "twisted", 2)["product_gamma"] == twist_document(c, "twisted", 2)["product_gamma"]);
}

TEST_CASE("every suite passes on the shipped models") {
  for (const auto& mp : {params("classical_torus"), params("nc_torus", 1, 3), params("nc_torus", 2, 5)}) {
    auto b = build_model(mp, kSpec);
    CHECK(b.core_ok);
    CHECK(b.kahler_ok);
    CHECK(b.holo_ok);
    Report r = run_suite(b, "all", kSpec);
    const ReportEntry* f = r.first_failure();
    CHECK_MESSAGE(f == nullptr, (f ? f->check_id + ": " + f->witness : std::string()));
  }
  for (auto mp : {params("finite_bicharacter"), params("fun_group")}) {
    auto b = build_model(mp, kSpec);
    CHECK(run_suite(b, "all", kSpec).ok());
  }
}

TEST_CASE("finite models report geometry suites as skipped") {
  auto b = build_model(params("fun_group"), kSpec);
  Report r = run_suite(b, "chern", kSpec);
  REQUIRE(r.entries().size() == 1);
  CHECK(r.entries()[0].status == Status::skipped);
}

TEST_CASE("suite ids are disjoint and all is their union") {
  auto b = build_model(params("nc_torus"), kSpec);
  std::set<std::string> ids;
  size_t total = 0;
  for (const auto& s : suite_names()) {
    Report r = run_suite(b, s, kSpec);
    for (const auto& e : r.entries()) {
      CHECK(e.check_id.rfind(s + ".", 0) == 0);
      ids.insert(e.check_id);
      ++total;
    }
  }
  CHECK(ids.size() == total);
  CHECK(run_suite(b, "all", kSpec).entries().size() == total);
}

TEST_CASE("reports are deterministic and independent of the sweep kernel") {
  auto b = build_model(params("nc_torus"), kSpec);
  std::string a = report_text(b, "metric");
  CHECK(report_text(build_model(params("nc_torus"), kSpec), "metric") == a);
  set_parallel(false);
  std::string serial = report_text(b, "metric");
  set_parallel(true);
  CHECK(serial == a);
}

TEST_CASE("each documented perturbation is caught by its suite and by all") {
  for (const auto& p : perturbations()) {
    CAPTURE(p.name);
    auto b = build_model(p.model, kSpec, p.id);
    Report r = run_suite(b, p.suite, kSpec);
    const ReportEntry* f = r.first_failure();
    REQUIRE(f != nullptr);
    CHECK(!f->witness.empty());
    CHECK_FALSE(run_suite(b, "all", kSpec).ok());
  }
}

TEST_CASE("perturbed pairing fails the real-Hermitian round trip") {
  auto b = build_model(params("nc_torus"), kSpec, Perturbation::pairing_entry);
  Report r = correspondence_roundtrips(b, kSpec);
  CHECK(r.ok() == false);
}

TEST_CASE("correspondence round trips pass, including for the trivial cocycle") {
  CHECK(correspondence_roundtrips(build_model(params("nc_torus"), kSpec), kSpec).ok());
  CHECK(correspondence_roundtrips(build_model(params("classical_torus"), kSpec), kSpec).ok());
}

TEST_CASE("twist then untwist reproduces the emitted tables") {
  auto b = build_model(params("nc_torus", 1, 3), kSpec);
  CHECK(twist_document(b, "base", 2).dump() == twist_document(b, "roundtrip", 2).dump());
  CHECK(twist_document(b, "base", 2).dump() != twist_document(b, "twisted", 2).dump());
  auto e = twist_document(b, "twisted", 2)["product_gamma"]["y"]["x"];
  CHECK(e["coeff"] == "zeta(3)^2");
  CHECK(e["monomial"] == "x*_g y");
}

TEST_CASE("invalid parameters are configuration errors") {
  CHECK_THROWS_AS(build_model(params("nope"), kSpec), Error);
  CHECK_THROWS_AS(build_model(params("nc_torus", 1, 0), kSpec), Error);
  auto mp = params("fun_group");
  mp.group = "S4";
  CHECK_THROWS_AS(build_model(mp, kSpec), Error);
  mp = params("finite_bicharacter");
  mp.pairing = "abc";
  CHECK_THROWS_AS(build_model(mp, kSpec), Error);
  CHECK_THROWS_AS(perturbation_from_name("bogus"), Error);
}

TEST_CASE("verified construction succeeds on a clean model") {
  CHECK_NOTHROW(build_verified_model(params("nc_torus"), kSpec));
}

TEST_CASE("tabulated cocycle with solved inverse matches the closed form") {
  auto mp = params("finite_bicharacter");
  mp.n = 3;
  auto closed = build_model(mp, kSpec);
  mp.cocycle = "table";
  auto table = build_model(mp, kSpec);
  CHECK(run_suite(table, "all", kSpec).ok());
  for (const auto& a : closed.A->labels(0))
    for (const auto& b : closed.A->labels(0)) CHECK(table.cocycle->gamma_bar(a, b) == closed.cocycle->gamma_bar(a, b));
}

TEST_CASE("trivial cocycle kind leaves the torus tables unchanged") {
  auto mp = params("nc_torus");
  mp.cocycle = "trivial";
  auto b = build_model(mp, kSpec);
  CHECK(twist_document(b, "base", 2)["tables"] == twist_document(b, "twisted", 2)["tables"]);
  mp.cocycle = "table";
  CHECK_THROWS_AS(build_model(mp, kSpec), Error);
}
