#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cotwist/relhopf.hpp"

namespace cotwist {

// Homogeneous form: coefficients on the basis of Omega^deg, left normal form.
struct Form {
  int deg = 0;
  Vec c;
  friend bool operator==(const Form& a, const Form& b) { return a.deg == b.deg && a.c == b.c; }
};

// Covariant *-calculus on B whose basis forms are central and coinvariant.
struct Calculus {
  std::string name;
  ComodPtr B;
  std::vector<std::vector<std::string>> names;  // names[0] = {"1"}
  // wedge[{k, l}][i * rank(l) + j] = (basis_k i) ^ (basis_l j), for k, l >= 1
  std::map<std::pair<int, int>, std::vector<Vec>> wedge;
  std::function<Vec(const Label&)> d0;   // d on B labels
  std::vector<std::vector<Vec>> dbasis;  // dbasis[k][i] in Omega^{k+1}
  std::vector<std::vector<Vec>> star;    // star[k][i] in Omega^k
  int top = 0;
  // Twisted calculi: d_gamma = Gamma(d) is evaluated in the base calculus.
  std::shared_ptr<const Calculus> base;
  CocyclePtr cocycle;

  size_t rank(int k) const { return k >= 0 && k <= top ? names[k].size() : 0; }
};
using CalcPtr = std::shared_ptr<const Calculus>;

Form form_zero(const Calculus& C, int k);
Form form_unit(const Calculus& C, int k, size_t i);
Form form_of(const Calculus& C, const Elem& b);  // degree 0
Form fadd(Form a, const Form& b);
Form fsub(Form a, const Form& b);
Form fscale(const Cyc& c, Form a);
bool fis_zero(const Form& a);
Form flmul(const Calculus& C, const Elem& b, const Form& a);
Form frmul(const Calculus& C, const Form& a, const Elem& b);
Form wedge(const Calculus& C, const Form& a, const Form& b);
Form dform(const Calculus& C, const Form& a);
Form star_form(const Calculus& C, const Form& a);
std::string form_str(const Calculus& C, const Form& a);
Form sample_form(const Calculus& C, int k, int box, Sampler& s);
// Wedge of a normal form of Omega^k (x) Omega^l (pure-tensor representatives).
Form wedge_tensor(const Calculus& C, int k, int l, const Vec& t);

// Flat calculus on the torus: omega_1 = x^-1 dx, omega_2 = y^-1 dy,
// d(x^m y^n) = x^m y^n (m omega_1 + n omega_2), omega_i^* = -omega_i.
CalcPtr torus_calculus(ComodPtr B);

// Omega_gamma: wedge and star tables derived from
// w ^_g h = gamma(w_-1, h_-1) w_0 ^ h_0 and w^{*g} = Vbar(w_-1^*) w_0^*.
CalcPtr twist_calculus(CalcPtr C, const TwistContext& t);
// The two defining formulas evaluated literally on elements.
Form wedge_formula(const TwistContext& t, const Calculus& C, const Form& a, const Form& b);
Form star_formula(const TwistContext& t, const Calculus& C, const Form& a);

// d^2 = 0, graded Leibniz, associativity, * laws, covariance, generation by B and dB.
Report verify_calculus(const Calculus& C, const SampleSpec& spec);
// For twisted calculi: tables agree with the literal formulas on samples.
Report verify_twisted_formulas(const TwistContext& t, const Calculus& C, const Calculus& Cg, const SampleSpec& spec);

// Bigrading given by scalar frames: frame[k][r] are coordinates of the r-th
// homogeneous form of degree k in the basis.
struct ComplexStructure {
  std::vector<std::vector<std::vector<Cyc>>> frame;
  std::vector<std::vector<std::vector<Cyc>>> frame_inv;
  std::vector<std::vector<std::pair<int, int>>> bigrade;
  std::vector<std::vector<std::string>> names;
  bool opposite = false;

  std::vector<size_t> indices(int p, int q) const;
};

ComplexStructure make_complex_structure(std::vector<std::vector<std::vector<Cyc>>> frame,
                                        std::vector<std::vector<std::pair<int, int>>> bigrade,
                                        std::vector<std::vector<std::string>> names);
ComplexStructure opposite_structure(const ComplexStructure& cs);
// Frame coordinates of the (p,q)-component, and the inclusion back into Omega^{p+q}.
Vec to_pq(const ComplexStructure& cs, const Form& a, int p, int q);
Form from_pq(const Calculus& C, const ComplexStructure& cs, int p, int q, const Vec& x);
Form project(const Calculus& C, const ComplexStructure& cs, const Form& a, int p, int q);
// Torus with tau = i: omega_+ = omega_1 + i omega_2 in (1,0), omega_- in (0,1).
ComplexStructure torus_complex_structure(long N);

Report verify_complex_structure(const Calculus& C, const ComplexStructure& cs, const SampleSpec& spec);

// Left inverse of wedge: Omega^(0,1) (x) Omega^(1,0) -> Omega^(1,1), in frame
// coordinates; theta[u] is the image of the u-th (1,1) frame form.
struct Factorization {
  std::vector<Vec> theta;
  size_t n01 = 0, n10 = 0, n11 = 0;
  std::string convention = "left inverse of wedge on (0,1) (x) (1,0)";
};
// Throws Error("not factorizable: ...") when the wedge map is singular.
Factorization factorization_inverse(const Calculus& C, const ComplexStructure& cs);
Vec apply_theta(const Calculus& C, const Factorization& f, const Vec& x11);

// Holomorphic structure on E = Omega^(1,0) of cs: dbar_E = theta pi^{1,1} d iota.
struct HoloModule {
  CalcPtr C;
  ComplexStructure cs;
  Factorization fac;
  size_t rank = 0, n01 = 0;
  // Twisted: dbar_{Gamma E} = phi^-1 Gamma(dbar_E).
  std::shared_ptr<const HoloModule> base;
  std::optional<TwistContext> twist;
};
using HoloPtr = std::shared_ptr<const HoloModule>;

HoloPtr holomorphic_from_factorizable(CalcPtr C, const ComplexStructure& cs);
HoloPtr twist_holomorphic(HoloPtr h, CalcPtr Cg, const TwistContext& t);
Vec dbar_B(const Calculus& C, const ComplexStructure& cs, const Elem& b);
// Values in Omega^(0,1) (x) E, index s * rank + r.
Vec dbar_E(const HoloModule& h, const Vec& v);
// (dbar (x) id - id ^ dbar_E) on a normal form of Omega^(0,1) (x) E; values in Omega^(0,2) (x) E.
Vec hol_operator(const HoloModule& h, const Vec& t);
Report verify_holomorphic(const HoloModule& h, const SampleSpec& spec);
// phi (dbar_g (x) id - id ^_g dbar_{Gamma E}) phi^-1 = Gamma(dbar (x) id - id ^ dbar_E).
Report verify_holomorphic_transport(const HoloModule& h, const HoloModule& hg, const SampleSpec& spec);

// Complex operator I on one-forms: multiplication by i on (1,0), by -i on (0,1).
std::vector<std::vector<Cyc>> complex_operator(const ComplexStructure& cs);
// Fundamental form sum_i I^-1 V^-1(dual_i) ^ omega_i for a scalar Gram matrix.
Form fundamental_form(const Calculus& C, const ComplexStructure& cs, const std::vector<std::vector<Cyc>>& gram);
// Central, real, coinvariant, (1,1), closed, Lefschetz bijective.
Report kahler_checks(const Calculus& C, const ComplexStructure& cs, const Form& kappa, const SampleSpec& spec);

// Scalar part of an element whose support is the unit label, else nullopt.
std::optional<Cyc> scalar_of(const ComoduleAlgebra& B, const Elem& e);

}  // namespace cotwist
