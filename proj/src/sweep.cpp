#include "cotwist/sweep.hpp"

#include <atomic>

namespace cotwist {

namespace {
std::atomic<bool> g_parallel{true};
}

void set_parallel(bool on) { g_parallel = on; }
bool parallel_enabled() { return g_parallel; }

std::string sampled_spec(const SampleSpec& spec, const std::string& what) {
  return std::to_string(spec.samples) + " sampled " + what + " box=" + std::to_string(spec.box) +
         " seed=" + std::to_string(spec.seed);
}

Cyc Sampler::coeff(long N) {
  switch (index(6)) {
    case 0: return Cyc(1);
    case 1: return Cyc(-1);
    case 2: return Cyc(2);
    case 3: return Cyc(Rational(1, 2));
    case 4: return Cyc::root(N, static_cast<long>(index(static_cast<size_t>(N))));
    default: return Cyc(1) + Cyc::root(N, 1);
  }
}

std::vector<std::vector<size_t>> index_tuples(size_t n, int k, size_t limit, int samples,
                                              uint64_t seed, bool* exhaustive) {
  std::vector<std::vector<size_t>> out;
  double total = 1;
  for (int i = 0; i < k; ++i) total *= static_cast<double>(n);
  if (total <= static_cast<double>(limit)) {
    if (exhaustive) *exhaustive = true;
    std::vector<size_t> t(k, 0);
    size_t count = static_cast<size_t>(total);
    out.reserve(count);
    for (size_t c = 0; c < count; ++c) {
      size_t x = c;
      for (int i = k - 1; i >= 0; --i) {
        t[i] = x % n;
        x /= n;
      }
      out.push_back(t);
    }
    return out;
  }
  if (exhaustive) *exhaustive = false;
  Sampler s(seed);
  for (int c = 0; c < samples; ++c) {
    std::vector<size_t> t(k);
    for (int i = 0; i < k; ++i) t[i] = s.index(n);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace cotwist
