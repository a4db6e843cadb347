#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "cotwist/scalar.hpp"

namespace oracle {

using C = std::complex<double>;

inline C root(long N, long k) {
  const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(N);
  return {std::cos(a), std::sin(a)};
}

// Floating-point evaluation of an exact cyclotomic number.
inline C value(const cotwist::Cyc& x) {
  C out = 0;
  for (const auto& [k, q] : x.terms()) out += q.get_d() * root(x.order(), k);
  return out;
}

inline bool close(C a, C b, double tol = 1e-9) { return std::abs(a - b) < tol; }

}  // namespace oracle
