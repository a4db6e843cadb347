#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cotwist/hopf.hpp"
#include "cotwist/report.hpp"

namespace cotwist {

using LabelFn = std::function<Cyc(const Label&)>;
using PairFn = std::function<Cyc(const Label&, const Label&)>;

// Bicharacter (m, n) -> exp(2 pi i sum_ij theta_ij m_j n_i) on a lattice or a
// finite abelian group; values land in Q(zeta_N).
struct Bicharacter {
  std::vector<std::vector<Rational>> theta;
  long N = 1;
  Rational exponent(const Label& m, const Label& n) const;
  Cyc operator()(const Label& m, const Label& n) const;
  bool skew() const;
};

struct PairFunctional {
  PairFn eval;
  std::optional<Bicharacter> closed_form;
  Cyc operator()(const Label& a, const Label& b) const { return eval(a, b); }
};

Cyc eval_lin(const LabelFn& f, const Elem& a);
Cyc eval_pair(const PairFunctional& f, const Elem& a, const Elem& b);
Cyc eval_pair(const PairFunctional& f, const Tensor& t);

PairFunctional counit_pair(HopfPtr A);
// (phi * psi)(a (x) b) = phi(a1 (x) b1) psi(a2 (x) b2)
PairFunctional convolve(const PairFunctional& phi, const PairFunctional& psi, HopfPtr A);
LabelFn convolve(const LabelFn& f, const LabelFn& g, HopfPtr A);

enum class InverseStrategy { grouplike_pointwise, table_solve, user_supplied };

// Convolution inverse, checked on the verification set (all pairs of a finite
// algebra, else the box).  Throws Error naming the offending pair.
PairFunctional convolution_inverse(const PairFunctional& gamma, HopfPtr A, InverseStrategy s,
                                   int box, const PairFunctional* supplied = nullptr);

struct CocycleData {
  std::string name;
  HopfPtr A;
  PairFunctional gamma, gamma_bar;
  // U(k) = gamma(k1, S k2), Ubar(k) = gammabar(S k1, k2),
  // V(k) = gamma(S^-1 k2, k1), Vbar(k) = gammabar(k2, S^-1 k1)
  LabelFn U, Ubar, V, Vbar;
  bool cocycle_verified = false;
  bool unital = false;
  bool unitary = false;
  long N = 1;
};
using CocyclePtr = std::shared_ptr<const CocycleData>;

CocyclePtr make_cocycle(std::string name, HopfPtr A, PairFunctional gamma, PairFunctional gamma_bar,
                        long N);

// Cocycle equation and its three equivalent forms, unitality, inverse laws,
// and for grouplike bases the cross-check against the group 2-cocycle path.
Report verify_cocycle_identities(const CocycleData& c, const SampleSpec& spec);
// Unitarity and the exchange identities built on it.
Report verify_unitarity_suite(const CocycleData& c, const SampleSpec& spec);
// Runs both suites; returns a copy with the flags set from the outcome.
CocyclePtr certify(CocyclePtr c, const SampleSpec& spec, Report* out = nullptr);

CocyclePtr trivial_cocycle(HopfPtr A);
CocyclePtr bicharacter_cocycle(HopfPtr A, Bicharacter b, std::string name);
// theta-deformation cocycle on C[Z^n]; theta must be skew.
CocyclePtr theta_cocycle(int n, const std::vector<std::vector<Rational>>& theta, long N);
// gamma(a, b) = f(a1) f(b1) fbar(a2 b2) for a unital convolution-invertible f.
CocyclePtr coboundary_cocycle(HopfPtr A, LabelFn f, LabelFn fbar, std::string name, long N);

struct TwistedHopf {
  HopfPtr base;
  CocyclePtr cocycle;
  HopfPtr twisted;
};

// A_gamma: product, S_gamma, S_gamma^-1 and *_gamma; shares Delta and eps.
// Evaluating *_gamma throws unless the cocycle is flagged unitary.
TwistedHopf twist_hopf(CocyclePtr c);
// gammabar viewed as a cocycle on A_gamma (its inverse is gamma).
CocyclePtr inverse_cocycle(const TwistedHopf& t);

}  // namespace cotwist
