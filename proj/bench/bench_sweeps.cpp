#include <benchmark/benchmark.h>

#include "cotwist/models.hpp"
#include "cotwist/sweep.hpp"

using namespace cotwist;

namespace {

const SampleSpec kSpec{4, 100, 42};

const ModelBundle& bicharacter_model() {
  static const ModelBundle b = [] {
    ModelParams mp;
    mp.model = "finite_bicharacter";
    mp.n = 5;
    return build_model(mp, kSpec);
  }();
  return b;
}

const ModelBundle& torus_model() {
  static const ModelBundle b = [] {
    ModelParams mp;
    mp.model = "nc_torus";
    return build_model(mp, kSpec);
  }();
  return b;
}

// state.range(0): 0 serial reference, 1 OpenMP kernel
void run(benchmark::State& state, const ModelBundle& b, const std::string& suite) {
  set_parallel(state.range(0) == 1);
  for (auto _ : state) {
    Report r = run_suite(b, suite, kSpec);
    if (!r.ok()) state.SkipWithError("suite failed");
    benchmark::DoNotOptimize(r);
  }
  set_parallel(true);
  state.SetLabel(state.range(0) == 1 ? "parallel" : "serial");
}

void BM_CocycleExhaustive(benchmark::State& state) { run(state, bicharacter_model(), "cocycle"); }
void BM_TorusMetric(benchmark::State& state) { run(state, torus_model(), "metric"); }
void BM_TorusBarFunctor(benchmark::State& state) { run(state, torus_model(), "barfunctor"); }

void BM_RawSweep(benchmark::State& state) {
  set_parallel(state.range(0) == 1);
  const auto& c = *bicharacter_model().cocycle;
  const auto labels = c.A->labels(0);
  const size_t n = labels.size();
  for (auto _ : state) {
    auto w = sweep(n * n * n, [&](size_t k) -> std::optional<std::string> {
      const Label& a = labels[k / (n * n)];
      const Label& b = labels[(k / n) % n];
      const Label& d = labels[k % n];
      const Cyc l = c.gamma(a, b) * c.gamma(c.A->mult(a, b).begin()->first, d);
      const Cyc r = c.gamma(b, d) * c.gamma(a, c.A->mult(b, d).begin()->first);
      if (l != r) return "cocycle equation";
      return std::nullopt;
    });
    benchmark::DoNotOptimize(w);
  }
  set_parallel(true);
  state.SetLabel(state.range(0) == 1 ? "parallel" : "serial");
}

}  // namespace

BENCHMARK(BM_RawSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CocycleExhaustive)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TorusMetric)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TorusBarFunctor)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
