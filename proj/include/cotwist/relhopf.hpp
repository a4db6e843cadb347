#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cotwist/cocycle.hpp"
#include "cotwist/sweep.hpp"

namespace cotwist {

// Left A-comodule *-algebra presented on a monomial basis.
struct ComoduleAlgebra {
  std::string name;
  HopfPtr A;
  std::function<bool(const Label&)> contains;
  std::function<Elem(const Label&, const Label&)> mult;
  Elem unit;
  std::function<Elem(const Label&)> star;
  std::function<Tensor(const Label&)> coaction;  // A-label (x) B-label
  std::function<std::vector<Label>(int)> labels;
  std::vector<std::pair<std::string, Label>> generators;
  bool finite = false;
  long N = 4;  // cyclotomic order used for sampled coefficients
  std::string symbol = "b";
  // Set on twisted algebras: the cocycle and the untwisted algebra.
  CocyclePtr cocycle;
  std::shared_ptr<const ComoduleAlgebra> base;
};
using ComodPtr = std::shared_ptr<const ComoduleAlgebra>;

Elem bmult(const ComoduleAlgebra& B, const Elem& a, const Elem& b);
Elem bstar(const ComoduleAlgebra& B, const Elem& a);
Tensor bcoact(const ComoduleAlgebra& B, const Elem& a);
// Coaction grouped by the A-leg: a |-> (B-part).
std::map<Label, Elem> coact_split(const ComoduleAlgebra& B, const Elem& a);
std::string monomial_str(const ComoduleAlgebra& B, const Label& l);
std::string belem_str(const ComoduleAlgebra& B, const Elem& e);

// Functions on the torus: x^m y^n, labels (m, n), over C[Z^2].
ComodPtr torus_algebra();
// B = A with coaction Delta.
ComodPtr regular_comodule(HopfPtr A);
// B_gamma over A_gamma: a._g b = gamma(a_-1, b_-1) a_0 b_0, b^{*g} = Vbar(b_-1^*) b_0^*.
ComodPtr twist_comodule_algebra(ComodPtr B, const TwistedHopf& t);

// Associativity, unit, coaction counital/coassociative, delta a *-homomorphism.
Report verify_comodule_algebra(const ComoduleAlgebra& B, const SampleSpec& spec);

// Free B-bimodule whose basis is central and coinvariant; elements are
// coefficient vectors in left normal form.
using Vec = std::vector<Elem>;

struct FreeModule {
  std::string name;
  std::vector<std::string> basis;
  size_t rank() const { return basis.size(); }
};
using ModPtr = std::shared_ptr<const FreeModule>;

ModPtr free_module(std::string name, std::vector<std::string> basis);
ModPtr tensor_module(const FreeModule& E, const FreeModule& F);
ModPtr bar_module(const FreeModule& E);

Vec vzero(size_t r);
Vec vunit(const ComoduleAlgebra& B, size_t r, size_t i);
Vec vadd(Vec a, const Vec& b);
Vec vsub(Vec a, const Vec& b);
Vec vscale(const Cyc& c, Vec v);
bool vis_zero(const Vec& v);
Vec vlmul(const ComoduleAlgebra& B, const Elem& b, const Vec& v);
Vec vrmul(const ComoduleAlgebra& B, const Vec& v, const Elem& b);
// v (x)_B w, basis index i * rank(w) + j.
Vec vtensor(const ComoduleAlgebra& B, const Vec& v, const Vec& w);
// Normal form of the conjugate: (sum b_i e_i)bar = sum b_i^* ebar_i.
Vec vbar(const ComoduleAlgebra& B, const Vec& v);
std::map<Label, Vec> vcoact(const ComoduleAlgebra& B, const Vec& v);
// Apply a left-linear map given by its values on the basis.
Vec vapply(const ComoduleAlgebra& B, const std::vector<Vec>& table, const Vec& v);
// Swap legs of a tensor normal form (r1 x r2 -> r2 x r1).
Vec vflip(const Vec& t, size_t r1, size_t r2);
std::string vstr(const ComoduleAlgebra& B, const FreeModule& E, const Vec& v);

// Twist data: untwisted B and its deformation B_gamma.
struct TwistContext {
  CocyclePtr c;
  ComodPtr B, Bg;
};
TwistContext make_twist_context(ComodPtr B, CocyclePtr c);

// phi(v (x)_g w) = gamma(v_-1, w_-1) v_0 (x)_B w_0 for pure tensors.
Vec phi_pure(const TwistContext& t, const Vec& v, const Vec& w);
Vec phi_inv_pure(const TwistContext& t, const Vec& v, const Vec& w);
// On normal forms via the representatives (t_ij e_i) (x) f_j.
Vec phi_nf(const TwistContext& t, const Vec& x, size_t r1, size_t r2);
Vec phi_inv_nf(const TwistContext& t, const Vec& x, size_t r1, size_t r2);

// N_E: conj(Gamma E) -> Gamma(Ebar); input in the normal form of conj(Gamma E).
Vec frak_N(const TwistContext& t, const Vec& z, bool omit_vbar = false);
// N_E^-1: Gamma(Ebar) -> conj(Gamma E).
Vec frak_N_inv(const TwistContext& t, const Vec& z);
// S(f)(v) = gamma(v_-2, S(v_-1) f(v_0)_-1) f(v_0)_0, f left-linear with values f_i on the basis.
Elem frak_S(const TwistContext& t, const std::vector<Elem>& f, const Vec& v);

// Hexagon, bb condition and naturality of N and phi on sampled elements.
// omit_vbar replaces N by the bare conjugation.
Report verify_bar_functor(const TwistContext& t, const FreeModule& E, const FreeModule& F,
                          const SampleSpec& spec, bool omit_vbar = false);
// Module axioms over B (coaction compatibility, bimodule associativity).
Report verify_module(const ComoduleAlgebra& B, const FreeModule& E, const SampleSpec& spec);

// Random element of B: a short combination of labels from the box.
Elem sample_belem(const ComoduleAlgebra& B, int box, Sampler& s, int terms = 2);
Vec sample_vec(const ComoduleAlgebra& B, size_t rank, int box, Sampler& s);

}  // namespace cotwist
