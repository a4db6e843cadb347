#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cotwist/calculus.hpp"

namespace cotwist {

// Metric (g, ( , )) on Omega^1: pairing[i * r + j] = (omega_i, omega_j),
// g in the normal form of Omega^1 (x)_B Omega^1.
struct Metric {
  CalcPtr C;
  std::vector<Elem> pairing;
  Vec g;
};

Elem metric_pair(const Metric& m, const Vec& a, const Vec& b);
// ( , ) applied to a normal form of Omega^1 (x) Omega^1.
Elem metric_pair_tensor(const Metric& m, const Vec& t);
// Star-flip of a normal form: sum w_i (x) h_i |-> sum h_i^* (x) w_i^*.
Vec dagger(const Calculus& C, const Vec& t);

// Snake identities, central, coinvariant, covariant pairing, reality.
Report verify_metric(const Metric& m, const SampleSpec& spec);
// Entries (omega_p, omega_q) in frame coordinates that the diamond condition forces to vanish.
Report verify_diamond(const Metric& m, const ComplexStructure& cs);

// (( , )_gamma, g_gamma): pairing by morphism twisting, g_gamma = phi^-1(g).
Metric twist_metric(const Metric& m, CalcPtr Cg, const TwistContext& t);
// Twisted pairing formula, g_gamma = phi^-1(g), and the reality transport identity.
Report verify_twisted_metric(const Metric& m, const Metric& mg, const TwistContext& t, const SampleSpec& spec);

// Left connection on a free module E of the given rank over C:
// nabla[i] = nabla(e_i) in Omega^1 (x) E (index k * rank + j);
// sigma[i * r1 + k] = sigma(e_i (x) omega_k) in Omega^1 (x) E, empty when not bimodule.
struct Connection {
  CalcPtr C;
  size_t rank = 0;
  std::vector<std::string> basis;
  std::vector<Vec> nabla;
  std::vector<Vec> sigma;
};

Vec connection_apply(const Connection& c, const Vec& v);
// sigma on a normal form of E (x) Omega^1.
Vec sigma_apply(const Connection& c, const Vec& x);
// Wedge of nabla minus d; zero iff torsion free.
Form torsion(const Connection& c, const Vec& v);
// (nabla (x) id + (sigma (x) id)(id (x) nabla)) g, in Omega^1 (x) Omega^1 (x) Omega^1.
Vec metric_compat(const Connection& c, const Metric& m);

// Left and right Leibniz, sigma a bimodule map, covariance.
Report verify_connection(const Connection& c, const SampleSpec& spec);
// Torsion zero and metric compatibility.
Report levi_civita_verify(const Connection& c, const Metric& m, const SampleSpec& spec);

// nabla_{Gamma E} = phi^-1 Gamma(nabla), sigma_gamma = phi^-1 sigma phi.
Connection twist_connection(const Connection& c, CalcPtr Cg, const TwistContext& t);
Report verify_twisted_connection(const Connection& c, const Connection& cg, const TwistContext& t,
                                 const SampleSpec& spec);

// Conjugate right connection on Ebar: for nabla(e_i) = sum X_kj omega_k (x) e_j,
// nablatilde(ebar_i) = sum ebar_j (x) (X_kj omega_k)^*.  Values in Ebar (x) Omega^1,
// index j * r1 + k; input z in the normal form of Ebar.
Vec conj_right_connection(const Connection& c, const Vec& z);
// Right Leibniz of nablatilde and its agreement with the pure-tensor formula.
Report verify_conj_connection(const Connection& c, const SampleSpec& spec);
// nablatilde_{Gamma E} = (N^-1 (x) id) phi^-1 Gamma(nablatilde_E) N.
Report verify_conj_twist(const Connection& c, const Connection& cg, const TwistContext& t, const SampleSpec& spec);

// Hermitian metric on a free module with central coinvariant basis:
// h[i][j] = <e_i, ebar_j>; <sum b_i e_i, sum c_j ebar_j> = sum b_i h_ij c_j.
struct Hermitian {
  ComodPtr B;
  std::vector<std::string> basis;
  std::vector<Vec> h;
};

Elem herm_pair(const Hermitian& H, const Vec& x, const Vec& z);
// H_g(wbar)(h) = (h, w^*): h_ij = (omega_i, omega_j^*).
Hermitian hermitian_from_real(const Metric& m);
// Inverse correspondence: (omega_i, omega_j) = <omega_i, conj(omega_j^*)>, g from the inverse table.
Metric real_from_hermitian(const Hermitian& H, CalcPtr C);
// Conjugate symmetry, <w, etabar> = (w, eta^*), invertibility, covariance.
Report verify_hermitian(const Hermitian& H, const SampleSpec& spec, const Metric* m = nullptr);
// Restriction to the (1,0) and (0,1) frames; off-diagonal blocks must vanish.
struct HermitianSplit {
  Hermitian h10, h01;
};
HermitianSplit split_hermitian(const Hermitian& H, const ComplexStructure& cs);
Report verify_split(const Hermitian& H, const ComplexStructure& cs);

// H_gamma = S Gamma(H) N: table of <e_i, ebar_j>_gamma through the literal composite.
Hermitian twist_hermitian(const Hermitian& H, const TwistContext& t);
// Composite H_gamma evaluated on sampled x, z.
Elem herm_pair_twisted(const Hermitian& H, const TwistContext& t, const Vec& x, const Vec& z);
// Pairing relation on samples, conjugate symmetry over B_gamma, invertibility.
Report verify_twisted_hermitian(const Hermitian& H, const Hermitian& Hg, const TwistContext& t,
                                const SampleSpec& spec);
// H_{g_gamma} = (H_g)_gamma as tables and on samples.
Report verify_hermitian_coherence(const Metric& mg, const Hermitian& Hg, const SampleSpec& spec);

// Chern connection by exact solve over the coefficient box.
struct ChernResult {
  Connection conn;
  size_t unknowns = 0, equations = 0;
  int box = 0;
};
ChernResult chern_solve(const HoloModule& h, const Hermitian& H, int box, long N);
// Both Chern conditions, checked on the returned connection.
Report verify_chern(const HoloModule& h, const Hermitian& H, const Connection& c, const SampleSpec& spec);

// Inclusion of the (1,0) module of cs into Omega^1 on the second leg.
Vec include_second_leg(const Calculus& C, const ComplexStructure& cs, const Vec& y, size_t rank);
// nabla(iota x) = (id (x) iota) nabla_Ch(x) on the basis and on sampled b x.
Report verify_direct_sum(const Connection& lc, const Connection& ch10, const ComplexStructure& cs,
                         const Connection& ch01, const ComplexStructure& opp, const SampleSpec& spec);

// Star object on Omega^1: star_gamma = N^-1 Gamma(star).
Report verify_star_object(const Calculus& C, const Calculus& Cg, const TwistContext& t, const SampleSpec& spec);

bool same_tables(const Connection& a, const Connection& b);

}  // namespace cotwist
