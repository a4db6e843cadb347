#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cotwist/report.hpp"
#include "cotwist/scalar.hpp"

namespace cotwist {

// Process-wide switch between the OpenMP kernels and their serial reference.
void set_parallel(bool on);
bool parallel_enabled();

// Evaluates f(0..n-1); f returns a witness on failure.  Returns the witness of
// the smallest failing index, so the result does not depend on scheduling.
template <class F>
std::optional<std::string> sweep_serial(size_t n, F&& f) {
  for (size_t i = 0; i < n; ++i) {
    std::optional<std::string> w;
    try {
      w = f(i);
    } catch (const std::exception& e) {
      w = std::string("exception: ") + e.what();
    }
    if (w) return w;
  }
  return std::nullopt;
}

template <class F>
std::optional<std::string> sweep_parallel(size_t n, F&& f) {
  long first = static_cast<long>(n);
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < count; ++i) {
    long cur;
#pragma omp atomic read
    cur = first;
    if (i > cur) continue;
    bool bad;
    try {
      bad = f(static_cast<size_t>(i)).has_value();
    } catch (...) {
      bad = true;
    }
    if (bad) {
#pragma omp critical(cotwist_sweep)
      if (i < first) first = i;
    }
  }
  if (first == count) return std::nullopt;
  try {
    auto w = f(static_cast<size_t>(first));
    if (w) return w;
    return std::string("nondeterministic failure at index ") + std::to_string(first);
  } catch (const std::exception& e) {
    return std::string("exception: ") + e.what();
  }
}

template <class F>
std::optional<std::string> sweep(size_t n, F&& f) {
  if (parallel_enabled()) return sweep_parallel(n, f);
  return sweep_serial(n, f);
}

// Deterministic sampler; indices use a plain modulus so that draws are the
// same on every platform for a given seed.
class Sampler {
 public:
  explicit Sampler(uint64_t seed) : rng_(seed) {}
  size_t index(size_t n) { return static_cast<size_t>(rng_() % n); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }
  // Small nonzero cyclotomic coefficient drawn from a fixed menu.
  Cyc coeff(long N);

 private:
  std::mt19937_64 rng_;
};

// Runs f on n independently seeded samplers; salt separates checks that
// share a seed.
template <class F>
std::optional<std::string> sample_sweep(size_t n, uint64_t seed, uint64_t salt, F&& f) {
  return sweep(n, [&](size_t i) {
    Sampler s(seed * 1000003ULL + salt * 7919ULL + i);
    return f(s);
  });
}

std::string sampled_spec(const SampleSpec& spec, const std::string& what);

// Index tuples for checks over k-fold products of n items: exhaustive when
// n^k <= limit, otherwise `samples` draws.
std::vector<std::vector<size_t>> index_tuples(size_t n, int k, size_t limit, int samples,
                                              uint64_t seed, bool* exhaustive);

}  // namespace cotwist
