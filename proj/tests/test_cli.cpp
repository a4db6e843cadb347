#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "cotwist/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "cotwist");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cotwist::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path tmp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cotwist_test_" + name);
}

}  // namespace

TEST_CASE("verify exits 0 and emits a JSON report") {
  auto r = run({"verify", "--model", "nc_torus", "--p", "1", "--q", "3", "--suite", "main", "--box", "3",
                "--samples", "20", "--seed", "42", "--format", "json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["ok"] == true);
  CHECK(j["schema_version"] == 1);
  for (const auto& e : j["entries"]) {
    CHECK(e.contains("check_id"));
    CHECK(e.contains("anchor"));
    CHECK(e.contains("duration_ms"));
  }
}

TEST_CASE("check failures exit 1") {
  auto r = run({"verify", "--model", "nc_torus", "--suite", "metric", "--perturb", "nabla_entry", "--samples", "10"});
  CHECK(r.code == 1);
  CHECK(r.out.find("[fail]") != std::string::npos);
}

TEST_CASE("configuration errors exit 2") {
  CHECK(run({"verify", "--model", "nope"}).code == 2);
  CHECK(run({"verify", "--suite", "everything"}).code == 2);
  CHECK(run({"verify", "--model", "nc_torus", "--q", "0"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"verify", "--config", tmp("missing.cfg").string()}).code == 2);
}

TEST_CASE("finite bicharacter cocycle suite is exhaustive") {
  auto r = run({"verify", "--model", "finite_bicharacter", "--n", "5", "--suite", "cocycle", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["exhaustive"] == true);
}

TEST_CASE("output is byte-stable without timings") {
  std::vector<std::string> a{"verify", "--model", "nc_torus", "--suite", "hermitian", "--samples", "10", "--no-timings",
                             "--format", "json"};
  CHECK(run(a).out == run(a).out);
  auto serial = a;
  serial.push_back("--serial");
  CHECK(run(serial).out == run(a).out);
}

TEST_CASE("config file supplies the same keys") {
  auto cfg = tmp("cfg.ini");
  {
    std::ofstream f(cfg);
    f << "model=finite_bicharacter\nn=3\nsuite=hopf\nformat=json\n";
  }
  auto r = run({"verify", "--config", cfg.string()});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["entries"].size() > 0);
  std::filesystem::remove(cfg);
}

TEST_CASE("environment variable sets the default format") {
  setenv("COTWIST_FORMAT", "json", 1);
  auto r = run({"verify", "--model", "fun_group", "--suite", "hopf"});
  unsetenv("COTWIST_FORMAT");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::accept(r.out));
  auto t = run({"verify", "--model", "fun_group", "--suite", "hopf"});
  CHECK(t.out.find("OK:") != std::string::npos);
}

TEST_CASE("twist emits sorted tables and round trips byte-identically") {
  auto base = tmp("base.json"), twisted = tmp("twisted.json"), back = tmp("back.json");
  CHECK(run({"twist", "--model", "nc_torus", "--stage", "base", "--emit", base.string()}).code == 0);
  CHECK(run({"twist", "--model", "nc_torus", "--emit", twisted.string()}).code == 0);
  CHECK(run({"twist", "--model", "nc_torus", "--stage", "roundtrip", "--emit", back.string()}).code == 0);
  CHECK(read_file(base) == read_file(back));
  auto j = nlohmann::json::parse(read_file(twisted));
  CHECK(j["schema"] == "cotwist-tables/1");
  CHECK(j["product_gamma"]["y"]["x"]["coeff"] == "zeta(3)^2");
  CHECK(j["product_gamma"]["y"]["x"]["monomial"] == "x*_g y");
  for (const auto& key : {"product", "star", "wedge", "d", "g", "nabla", "sigma", "hermitian"})
    CHECK(j["tables"].contains(key));
  for (const auto& p : {base, twisted, back}) std::filesystem::remove(p);
}

TEST_CASE("trivial cocycle twist leaves the tables unchanged") {
  auto a = run({"twist", "--model", "classical_torus", "--stage", "base", "--emit", "-"});
  auto b = run({"twist", "--model", "classical_torus", "--stage", "twisted", "--emit", "-"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("twist I/O errors exit 2") {
  CHECK(run({"twist", "--model", "nc_torus", "--emit", "/nonexistent-dir/x.json"}).code == 2);
  CHECK(run({"twist", "--model", "nc_torus"}).code == 2);
}
