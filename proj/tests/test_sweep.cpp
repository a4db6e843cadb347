#include "doctest.h"

#include "cotwist/sweep.hpp"

using namespace cotwist;

TEST_CASE("parallel sweep reports the smallest failing index") {
  auto f = [](size_t i) -> std::optional<std::string> {
    if (i % 97 == 13 || i == 5000) return "bad " + std::to_string(i);
    return std::nullopt;
  };
  CHECK(sweep_serial(10000, f) == std::optional<std::string>("bad 13"));
  CHECK(sweep_parallel(10000, f) == std::optional<std::string>("bad 13"));
  auto ok = [](size_t) -> std::optional<std::string> { return std::nullopt; };
  CHECK_FALSE(sweep_parallel(1000, ok).has_value());
}

TEST_CASE("exceptions count as failures with a witness") {
  auto f = [](size_t i) -> std::optional<std::string> {
    if (i == 3) throw Error("boom");
    return std::nullopt;
  };
  auto w = sweep_parallel(10, f);
  REQUIRE(w.has_value());
  CHECK(w->find("boom") != std::string::npos);
  CHECK(sweep_serial(10, f) == w);
}

TEST_CASE("sampled sweeps are deterministic in seed and salt") {
  auto run = [](uint64_t seed, uint64_t salt, bool parallel) {
    set_parallel(parallel);
    auto w = sample_sweep(500, seed, salt, [](Sampler& s) -> std::optional<std::string> {
      size_t k = s.index(1000);
      if (k < 20) return "draw " + std::to_string(k);
      return std::nullopt;
    });
    set_parallel(true);
    return w;
  };
  CHECK(run(42, 1, true) == run(42, 1, false));
  CHECK(run(42, 1, true) == run(42, 1, true));
  Sampler a(5), b(5);
  for (int i = 0; i < 10; ++i) CHECK(a.index(100) == b.index(100));
}

TEST_CASE("index tuples are exhaustive below the limit") {
  bool ex = false;
  auto t = index_tuples(5, 3, 1000, 20, 1, &ex);
  CHECK(ex);
  CHECK(t.size() == 125);
  auto s = index_tuples(50, 3, 1000, 20, 1, &ex);
  CHECK_FALSE(ex);
  CHECK(s.size() == 20);
}
