#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cotwist/geometry.hpp"

namespace cotwist {

struct ModelParams {
  std::string model = "classical_torus";  // classical_torus, nc_torus, finite_bicharacter, fun_group
  long p = 1, q = 3;                      // nc_torus: theta_12 = p/q
  int n = 5;                              // finite_bicharacter: Z_n x Z_n
  std::string pairing = "ad-bc";          // finite_bicharacter: "ad-bc" (skew) or "ad"
  std::string group = "S3";               // fun_group
  // Cocycle kind: "" picks the model's own (theta, bicharacter or table); "trivial"
  // replaces it by the counit; "table" tabulates the model's cocycle on a finite
  // algebra and derives gammabar by an exact solve.
  std::string cocycle;
};

// Single-entry faults; each one is caught by the suite named in its descriptor.
enum class Perturbation {
  none,
  cocycle_phase,    // gamma at one pair scaled by a root of unity
  cocycle_scale,    // gamma at one pair scaled by 2
  antipode,         // one antipode value on Fun(S3) replaced
  sigma_scale,      // sigma(omega_1 (x) omega_2) scaled by zeta_3
  pairing_entry,    // (omega_1, omega_2) = 1
  nabla_entry,      // nabla(omega_1) = omega_1 (x) omega_2
  wedge_sign,       // omega_2 ^ omega_1 = + omega_1 ^ omega_2
  star_sign,        // omega_1^* = + omega_1
  hermitian_entry,  // <omega_1, conj omega_2> = 1
  omit_vbar         // N replaced by bare conjugation
};

struct PerturbationInfo {
  Perturbation id;
  std::string name;
  std::string description;
  ModelParams model;
  std::string suite;  // suite expected to catch it
};
const std::vector<PerturbationInfo>& perturbations();
Perturbation perturbation_from_name(const std::string& name);

struct ModelBundle {
  std::string name;
  ModelParams params;
  Perturbation perturbation = Perturbation::none;
  long N = 4;
  HopfPtr A;
  CocyclePtr cocycle;
  Report cocycle_report;
  TwistedHopf th;
  ComodPtr B;
  TwistContext t;
  FreeModule instrument;  // B as a free module over itself, basis {1}
  bool geometric = false;
  // Geometric layer (torus models).  A construction failure is kept in `error`;
  // the flags record which layers were built.
  std::string error;
  bool core_ok = false, kahler_ok = false, holo_ok = false;
  CalcPtr C, Cg;
  ComplexStructure cs, opp;
  Metric m, mg;
  Connection lc, lcg;
  Hermitian H, Hg;
  HermitianSplit split, split_g;
  HoloPtr h10, h01, h10g, h01g;
  Form kappa, kappa_g;
};

// Builds the components; faults surface when the suites run.
ModelBundle build_model(const ModelParams& params, const SampleSpec& spec,
                        Perturbation pert = Perturbation::none);
// Builds and runs every suite; throws ModelError carrying the report on failure.
struct ModelError : Error {
  Report report;
  ModelError(const std::string& what, Report r) : Error(what), report(std::move(r)) {}
};
ModelBundle build_verified_model(const ModelParams& params, const SampleSpec& spec);

const std::vector<std::string>& suite_names();  // without "all"
// Entries carry ids "<suite>.<check>"; "all" is the union.
Report run_suite(const ModelBundle& b, const std::string& suite, const SampleSpec& spec);

// Real <-> Hermitian, metric -> twist -> untwist, Hermitian -> twist -> untwist,
// and twist-then-Hermitian = Hermitian-then-twist.
Report correspondence_roundtrips(const ModelBundle& b, const SampleSpec& spec);

// Structure tables (product and star on the box, wedge, d, g, nabla, sigma, H).
// Geometric arguments may be null for models without a calculus.
nlohmann::json structure_tables(const ComoduleAlgebra& B, const Calculus* C, const Metric* m,
                                const Connection* lc, const Hermitian* H, int box);
// Twisted structure tables written by the CLI.  stage: "base", "twisted" or
// "roundtrip" (twist by gamma then by gammabar).
nlohmann::json twist_document(const ModelBundle& b, const std::string& stage, int box);
// Generator products u ._g v as coeff * (normal-ordered monomial).
nlohmann::json product_table(const ComoduleAlgebra& B, const std::string& op);

}  // namespace cotwist
