#include "cotwist/models.hpp"

#include <numeric>

#include "cotwist/linalg.hpp"

namespace cotwist {

const std::vector<PerturbationInfo>& perturbations() {
  static const std::vector<PerturbationInfo> list = [] {
    ModelParams nc;
    nc.model = "nc_torus";
    ModelParams fun;
    fun.model = "fun_group";
    ModelParams inst;
    inst.model = "finite_bicharacter";
    inst.pairing = "ad";
    return std::vector<PerturbationInfo>{
        {Perturbation::cocycle_phase, "cocycle_phase", "gamma((1,0),(0,1)) scaled by zeta_q", nc, "cocycle"},
        {Perturbation::cocycle_scale, "cocycle_scale", "gamma((1,0),(0,1)) scaled by 2", nc, "cocycle"},
        {Perturbation::antipode, "antipode", "S(delta_(021)) replaced by delta_(120) on Fun(S3)", fun, "hopf"},
        {Perturbation::sigma_scale, "sigma_scale", "sigma(w1 (x) w2) scaled by zeta_3", nc, "metric"},
        {Perturbation::pairing_entry, "pairing_entry", "(w1, w2) set to 1", nc, "metric"},
        {Perturbation::nabla_entry, "nabla_entry", "nabla(w1) set to w1 (x) w2", nc, "metric"},
        {Perturbation::wedge_sign, "wedge_sign", "w2 ^ w1 set to + w1 ^ w2", nc, "calculus"},
        {Perturbation::star_sign, "star_sign", "w1^* set to + w1", nc, "calculus"},
        {Perturbation::hermitian_entry, "hermitian_entry", "<w1, conj w2> set to 1", nc, "hermitian"},
        {Perturbation::omit_vbar, "omit_vbar", "N replaced by bare conjugation (Vbar omitted)", inst, "barfunctor"},
    };
  }();
  return list;
}

Perturbation perturbation_from_name(const std::string& name) {
  if (name == "none") return Perturbation::none;
  for (const auto& p : perturbations())
    if (p.name == name) return p.id;
  throw Error("unknown perturbation: " + name);
}

namespace {

CocyclePtr perturb_cocycle(CocyclePtr c, Perturbation pert, long q) {
  if (pert != Perturbation::cocycle_phase && pert != Perturbation::cocycle_scale) return c;
  const Label a{1, 0}, b{0, 1};
  Cyc f = pert == Perturbation::cocycle_scale ? Cyc(2) : Cyc::root(q > 1 ? q : 4, 1);
  PairFunctional g;
  auto orig = c->gamma;
  g.eval = [orig, a, b, f](const Label& x, const Label& y) {
    Cyc v = orig(x, y);
    return x == a && y == b ? v * f : v;
  };
  return make_cocycle(c->name + "_perturbed", c->A, g, c->gamma_bar, c->N);
}

HopfPtr perturb_antipode(HopfPtr A) {
  auto P = std::make_shared<HopfPresentation>(*A);
  auto orig = A->antipode;
  P->antipode = [orig](const Label& l) { return l.v[0] == 1 ? Elem::basis(Label{3}) : orig(l); };
  return P;
}

ComodPtr with_order(ComodPtr B, long N) {
  auto C = std::make_shared<ComoduleAlgebra>(*B);
  C->N = N;
  return C;
}

std::optional<std::vector<std::vector<Cyc>>> pairing_matrix(const Metric& m) {
  const size_t n = m.C->rank(1);
  std::vector<std::vector<Cyc>> P(n, std::vector<Cyc>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      auto s = scalar_of(*m.C->B, m.pairing[i * n + j]);
      if (!s) return std::nullopt;
      P[i][j] = *s;
    }
  return P;
}

void build_geometry(ModelBundle& b) {
  const auto& B = *b.B;
  const Elem one = B.unit;
  const Perturbation pert = b.perturbation;
  try {
    auto C = std::make_shared<Calculus>(*torus_calculus(b.B));
    if (pert == Perturbation::wedge_sign) C->wedge[{1, 1}][2] = Vec{one};
    if (pert == Perturbation::star_sign) C->star[1][0] = Vec{one, Elem()};
    b.C = C;
    b.Cg = twist_calculus(b.C, b.t);
    b.cs = torus_complex_structure(b.N);
    b.opp = opposite_structure(b.cs);

    b.m.C = b.C;
    b.m.pairing = {one, Elem(), Elem(), one};
    if (pert == Perturbation::pairing_entry) b.m.pairing[1] = one;
    b.m.g = {one, Elem(), Elem(), one};
    b.mg = twist_metric(b.m, b.Cg, b.t);

    b.lc.C = b.C;
    b.lc.rank = 2;
    b.lc.basis = C->names[1];
    b.lc.nabla.assign(2, Vec(4));
    b.lc.sigma.assign(4, Vec(4));
    for (size_t i = 0; i < 2; ++i)
      for (size_t k = 0; k < 2; ++k) b.lc.sigma[i * 2 + k][k * 2 + i] = one;
    if (pert == Perturbation::nabla_entry) b.lc.nabla[0][1] = one;
    if (pert == Perturbation::sigma_scale) b.lc.sigma[1] = vscale(Cyc::root(3, 1), b.lc.sigma[1]);
    b.lcg = twist_connection(b.lc, b.Cg, b.t);

    b.H = hermitian_from_real(b.m);
    if (pert == Perturbation::hermitian_entry) b.H.h[0][1] = one;
    b.Hg = twist_hermitian(b.H, b.t);
    b.split = split_hermitian(b.H, b.cs);
    b.split_g.h10 = twist_hermitian(b.split.h10, b.t);
    b.split_g.h01 = twist_hermitian(b.split.h01, b.t);
    b.core_ok = true;

    auto P = pairing_matrix(b.m), Pg = pairing_matrix(b.mg);
    if (!P || !Pg) throw Error("pairing has non-scalar entries");
    b.kappa = fundamental_form(*b.C, b.cs, *P);
    b.kappa_g = fundamental_form(*b.Cg, b.cs, *Pg);
    b.kahler_ok = true;

    b.h10 = holomorphic_from_factorizable(b.C, b.cs);
    b.h01 = holomorphic_from_factorizable(b.C, b.opp);
    b.h10g = twist_holomorphic(b.h10, b.Cg, b.t);
    b.h01g = twist_holomorphic(b.h01, b.Cg, b.t);
    b.holo_ok = true;
  } catch (const std::exception& e) {
    b.error = e.what();
  }
}

}  // namespace

namespace {

PairFunctional tabulate(const PairFunctional& f, const HopfPresentation& A) {
  auto table = std::make_shared<std::map<std::pair<Label, Label>, Cyc>>();
  const auto L = A.labels(0);
  for (const auto& a : L)
    for (const auto& b : L) (*table)[{a, b}] = f(a, b);
  PairFunctional out;
  out.eval = [table](const Label& a, const Label& b) { return table->at({a, b}); };
  return out;
}

CocyclePtr select_cocycle(CocyclePtr natural, const std::string& natural_kind, const ModelParams& params) {
  const std::string& kind = params.cocycle;
  if (kind.empty() || kind == natural_kind) return natural;
  if (kind == "trivial") return trivial_cocycle(natural->A);
  if (kind == "table") {
    if (!natural->A->finite) throw Error("cocycle kind table needs a finite algebra");
    PairFunctional g = tabulate(natural->gamma, *natural->A);
    PairFunctional gb = convolution_inverse(g, natural->A, InverseStrategy::table_solve, 0);
    return make_cocycle(natural->name + "_table", natural->A, g, gb, natural->N);
  }
  throw Error("cocycle kind " + kind + " does not apply to model " + params.model + " (expected " + natural_kind +
              ", trivial or table)");
}

}  // namespace

ModelBundle build_model(const ModelParams& params, const SampleSpec& spec, Perturbation pert) {
  ModelBundle b;
  b.params = params;
  b.perturbation = pert;
  b.instrument = FreeModule{"B", {"1"}};
  CocyclePtr c;
  if (params.model == "classical_torus" || params.model == "nc_torus") {
    const bool classical = params.model == "classical_torus";
    const long p = classical ? 0 : params.p, q = classical ? 1 : params.q;
    if (q <= 0) throw Error("q must be positive");
    b.N = std::lcm(4L, q);
    if (classical) {
      b.name = "classical_torus";
      c = trivial_cocycle(group_algebra({0, 0}));
    } else {
      b.name = "nc_torus(" + std::to_string(p) + "," + std::to_string(q) + ")";
      Rational th(p, q);
      th.canonicalize();
      c = theta_cocycle(2, {{Rational(0), th}, {Rational(-th), Rational(0)}}, b.N);
    }
    c = select_cocycle(c, classical ? "trivial" : "theta", params);
    b.A = c->A;
    b.B = with_order(torus_algebra(), b.N);
    b.geometric = true;
  } else if (params.model == "finite_bicharacter") {
    if (params.n < 2) throw Error("n must be at least 2");
    std::vector<std::vector<Rational>> theta(2, std::vector<Rational>(2, Rational(0)));
    if (params.pairing == "ad-bc") {
      theta[1][0] = Rational(1, params.n);
      theta[0][1] = Rational(-1, params.n);
    } else if (params.pairing == "ad") {
      theta[1][0] = Rational(1, params.n);
    } else {
      throw Error("unknown pairing: " + params.pairing + " (expected ad-bc or ad)");
    }
    for (auto& row : theta)
      for (auto& x : row) x.canonicalize();
    b.N = std::lcm(4L, static_cast<long>(params.n));
    b.name = "finite_bicharacter(" + std::to_string(params.n) + "," + params.pairing + ")";
    b.A = group_algebra({params.n, params.n});
    c = bicharacter_cocycle(b.A, Bicharacter{theta, params.n}, "bichar_" + params.pairing);
    c = select_cocycle(c, "bicharacter", params);
    b.B = with_order(regular_comodule(b.A), b.N);
  } else if (params.model == "fun_group") {
    if (params.group != "S3") throw Error("unsupported group: " + params.group + " (only S3)");
    b.N = 12;
    b.name = "fun_group(S3)";
    b.A = function_algebra(symmetric_group(3));
    if (pert == Perturbation::antipode) b.A = perturb_antipode(b.A);
    // F = zeta_3 e + (1 - zeta_3) p with p = (e + s)/2 and s the transposition (021)
    const Cyc z = Cyc::root(3, 1), h = Cyc(Rational(1, 2));
    LabelFn f = [z, h](const Label& l) {
      if (l.v[0] == 0) return z + h * (Cyc(1) - z);
      if (l.v[0] == 1) return h * (Cyc(1) - z);
      return Cyc();
    };
    LabelFn fbar = [z, h](const Label& l) {
      const Cyc zi = z.conj();
      if (l.v[0] == 0) return zi + h * (Cyc(1) - zi);
      if (l.v[0] == 1) return h * (Cyc(1) - zi);
      return Cyc();
    };
    c = coboundary_cocycle(b.A, f, fbar, "coboundary_F", 3);
    c = select_cocycle(c, "coboundary", params);
    b.B = with_order(regular_comodule(b.A), b.N);
  } else {
    throw Error("unknown model: " + params.model);
  }
  c = perturb_cocycle(c, pert, params.q);
  b.cocycle = certify(c, spec, &b.cocycle_report);
  b.th = twist_hopf(b.cocycle);
  b.t = TwistContext{b.cocycle, b.B, twist_comodule_algebra(b.B, b.th)};
  if (b.geometric) build_geometry(b);
  return b;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"hopf", "cocycle", "barfunctor", "calculus", "metric", "hermitian", "chern", "main"};
  return names;
}

namespace {

struct ChernSet {
  ChernResult c10, c01, c10g, c01g;
};

ChernSet solve_all(const ModelBundle& b, int box) {
  ChernSet s;
  s.c10 = chern_solve(*b.h10, b.split.h10, box, b.N);
  s.c01 = chern_solve(*b.h01, b.split.h01, box, b.N);
  s.c10g = chern_solve(*b.h10g, b.split_g.h10, box, b.N);
  s.c01g = chern_solve(*b.h01g, b.split_g.h01, box, b.N);
  return s;
}

std::string table_diff(const Connection& a, const Connection& b) {
  const auto& B = *a.C->B;
  for (size_t i = 0; i < a.nabla.size(); ++i)
    if (a.nabla[i] != b.nabla[i]) {
      FreeModule O{"Omega^1", a.C->names[1]};
      auto OE = tensor_module(O, FreeModule{"E", a.basis});
      return "nabla(" + a.basis[i] + "): " + vstr(B, *OE, a.nabla[i]) + " vs " + vstr(B, *OE, b.nabla[i]);
    }
  if (a.sigma != b.sigma) return "sigma tables differ";
  return "";
}

void construction_check(Report& r, const ModelBundle& b, bool ok) {
  run_check(r, "construction", "plumbing", "model", [&]() -> std::optional<std::string> {
    if (!ok) return "model construction failed: " + (b.error.empty() ? std::string("layer not built") : b.error);
    return std::nullopt;
  });
}

bool need_geometry(Report& r, const ModelBundle& b, bool layer_ok) {
  if (!b.geometric) {
    add_skipped(r, "geometry", "plumbing", "model has no differential calculus");
    return false;
  }
  if (!layer_ok) {
    construction_check(r, b, false);
    return false;
  }
  return true;
}

TwistContext inverse_context(const ModelBundle& b) {
  auto ic = inverse_cocycle(b.th);
  auto th2 = twist_hopf(ic);
  return TwistContext{ic, b.t.Bg, twist_comodule_algebra(b.t.Bg, th2)};
}

Report suite_hopf(const ModelBundle& b, const SampleSpec& spec) {
  Report r;
  r.merge(verify_hopf_axioms(*b.A, spec), "A");
  r.merge(verify_hopf_axioms(*b.th.twisted, spec), "A_gamma");
  return r;
}

Report suite_cocycle(const ModelBundle& b, const SampleSpec& spec) {
  Report r;
  certify(b.cocycle, spec, &r);
  if (b.A->cocommutative) {
    const auto labels = sample_labels(*b.A, spec.box);
    const size_t n = labels.size();
    run_check(r, "cocommutative_collapse", "cocommutative A: product_gamma = product and star_gamma = star",
              box_spec(*b.A, spec, n * n, true), [&]() {
                return sweep(n * n, [&](size_t k) -> std::optional<std::string> {
                  const Label& x = labels[k / n];
                  const Label& y = labels[k % n];
                  if (b.th.twisted->mult(x, y) != b.A->mult(x, y)) return "product differs at " + x.str() + ", " + y.str();
                  if (k % n == 0 && b.th.twisted->star(x) != b.A->star(x)) return "star differs at " + x.str();
                  return std::nullopt;
                });
              });
  }
  return r;
}

Report suite_barfunctor(const ModelBundle& b, const SampleSpec& spec) {
  Report r;
  const bool omit = b.perturbation == Perturbation::omit_vbar;
  r.merge(verify_comodule_algebra(*b.B, spec), "comodule");
  r.merge(verify_comodule_algebra(*b.t.Bg, spec), "comodule_gamma");
  r.merge(verify_module(*b.B, b.instrument, spec), "module_instrument");
  r.merge(verify_bar_functor(b.t, b.instrument, b.instrument, spec, omit), "instrument");
  if (b.geometric && b.core_ok) {
    FreeModule O{"Omega^1", b.C->names[1]};
    r.merge(verify_module(*b.B, O, spec), "module_omega");
    r.merge(verify_bar_functor(b.t, O, O, spec, omit), "omega");
    r.merge(verify_star_object(*b.C, *b.Cg, b.t, spec), "omega");
  } else if (b.geometric) {
    construction_check(r, b, false);
  }
  return r;
}

Report suite_calculus(const ModelBundle& b, const SampleSpec& spec) {
  Report r;
  if (!need_geometry(r, b, b.core_ok)) return r;
  r.merge(verify_calculus(*b.C, spec), "calculus");
  r.merge(verify_calculus(*b.Cg, spec), "calculus_gamma");
  r.merge(verify_twisted_formulas(b.t, *b.C, *b.Cg, spec), "twisted");
  r.merge(verify_complex_structure(*b.C, b.cs, spec), "complex");
  r.merge(verify_complex_structure(*b.Cg, b.cs, spec), "complex_gamma");
  run_check(r, "factorizable", "factorizable complex structure: wedge (0,1) (x) (1,0) -> (1,1) is invertible", "frames, convention: left inverse theta_l",
            [&]() -> std::optional<std::string> {
              if (!b.holo_ok) return b.error;
              return std::nullopt;
            });
  if (b.holo_ok) {
    r.merge(verify_holomorphic(*b.h10, spec), "holomorphic");
    r.merge(verify_holomorphic(*b.h10g, spec), "holomorphic_gamma");
    r.merge(verify_holomorphic_transport(*b.h10, *b.h10g, spec), "holomorphic_gamma");
  }
  if (b.kahler_ok) {
    r.merge(kahler_checks(*b.C, b.cs, b.kappa, spec), "kahler");
    r.merge(kahler_checks(*b.Cg, b.cs, b.kappa_g, spec), "kahler_gamma");
  } else {
    construction_check(r, b, false);
  }
  return r;
}

Report suite_metric(const ModelBundle& b, const SampleSpec& spec) {
  Report r;
  if (!need_geometry(r, b, b.core_ok)) return r;
  r.merge(verify_metric(b.m, spec), "metric");
  r.merge(verify_diamond(b.m, b.cs), "metric");
  r.merge(verify_metric(b.mg, spec), "metric_gamma");
  r.merge(verify_diamond(b.mg, b.cs), "metric_gamma");
  r.merge(verify_twisted_metric(b.m, b.mg, b.t, spec), "twisted_metric");
  r.merge(verify_connection(b.lc, spec), "connection");
  r.merge(levi_civita_verify(b.lc, b.m, spec), "levi_civita");
  r.merge(verify_connection(b.lcg, spec), "connection_gamma");
  r.merge(levi_civita_verify(b.lcg, b.mg, spec), "levi_civita_gamma");
  r.merge(verify_twisted_connection(b.lc, b.lcg, b.t, spec), "twisted_connection");
  r.merge(verify_conj_connection(b.lc, spec), "conjugate");
  r.merge(verify_conj_connection(b.lcg, spec), "conjugate_gamma");
  r.merge(verify_conj_twist(b.lc, b.lcg, b.t, spec), "conjugate_gamma");
  return r;
}

Report suite_hermitian(const ModelBundle& b, const SampleSpec& spec) {
  Report r;
  if (!need_geometry(r, b, b.core_ok)) return r;
  r.merge(verify_hermitian(b.H, spec, &b.m), "hermitian");
  r.merge(verify_split(b.H, b.cs), "hermitian");
  r.merge(verify_twisted_hermitian(b.H, b.Hg, b.t, spec), "hermitian_gamma");
  r.merge(verify_split(b.Hg, b.cs), "hermitian_gamma");
  r.merge(verify_hermitian_coherence(b.mg, b.Hg, spec), "hermitian_gamma");
  run_check(r, "hermitian_gamma.split_commutes", "twisting commutes with the splitting H = H_1 (+) H_2", "frames",
            [&]() -> std::optional<std::string> {
              auto s = split_hermitian(b.Hg, b.cs);
              if (s.h10.h != b.split_g.h10.h) return std::string("(1,0) block differs");
              if (s.h01.h != b.split_g.h01.h) return std::string("(0,1) block differs");
              return std::nullopt;
            });
  r.merge(correspondence_roundtrips(b, spec), "roundtrip");
  return r;
}

Report suite_chern(const ModelBundle& b, const SampleSpec& spec) {
  Report r;
  if (!need_geometry(r, b, b.holo_ok)) return r;
  struct Part {
    std::string tag;
    HoloPtr h, hg;
    const Hermitian *H, *Hg;
  };
  for (const Part& p : {Part{"e10", b.h10, b.h10g, &b.split.h10, &b.split_g.h10},
                        Part{"e01", b.h01, b.h01g, &b.split.h01, &b.split_g.h01}}) {
    std::optional<ChernResult> c1, cg;
    run_check(r, p.tag + ".solve_unique", "Chern connection: unique solution of the exact system", "coefficient box 1",
              [&]() -> std::optional<std::string> {
                c1 = chern_solve(*p.h, *p.H, 1, b.N);
                return std::nullopt;
              });
    run_check(r, p.tag + ".box_independent", "Chern connection: solution independent of the coefficient box", "coefficient boxes 1 and 2",
              [&]() -> std::optional<std::string> {
                if (!c1) return std::string("no box-1 solution");
                auto c2 = chern_solve(*p.h, *p.H, 2, b.N);
                auto d = table_diff(c1->conn, c2.conn);
                if (!d.empty()) return d;
                return std::nullopt;
              });
    run_check(r, p.tag + ".scale_invariant", "Chern connection: unchanged when H is scaled by 2", "coefficient box 1",
              [&]() -> std::optional<std::string> {
                if (!c1) return std::string("no box-1 solution");
                Hermitian H2 = *p.H;
                for (auto& row : H2.h) row = vscale(Cyc(2), row);
                auto d = table_diff(c1->conn, chern_solve(*p.h, H2, 1, b.N).conn);
                if (!d.empty()) return d;
                return std::nullopt;
              });
    if (c1) r.merge(verify_chern(*p.h, *p.H, c1->conn, spec), p.tag);
    run_check(r, p.tag + "_gamma.solve_unique", "twisted Chern connection: unique solution of the exact system", "coefficient box 1",
              [&]() -> std::optional<std::string> {
                cg = chern_solve(*p.hg, *p.Hg, 1, b.N);
                return std::nullopt;
              });
    run_check(r, p.tag + "_gamma.equals_twist", "twisted Chern connection = phi^-1 Gamma(nabla_Ch)", "basis tables",
              [&]() -> std::optional<std::string> {
                if (!c1 || !cg) return std::string("missing solution");
                auto d = table_diff(cg->conn, twist_connection(c1->conn, b.Cg, b.t));
                if (!d.empty()) return d;
                return std::nullopt;
              });
    if (cg) r.merge(verify_chern(*p.hg, *p.Hg, cg->conn, spec), p.tag + "_gamma");
  }
  return r;
}

Report suite_main(const ModelBundle& b, const SampleSpec& spec) {
  Report r;
  if (!need_geometry(r, b, b.holo_ok)) return r;
  std::optional<ChernSet> s;
  run_check(r, "chern_solutions", "Chern connections of the (1,0) and (0,1) parts exist and are unique", "coefficient box 1",
            [&]() -> std::optional<std::string> {
              s = solve_all(b, 1);
              return std::nullopt;
            });
  r.merge(levi_civita_verify(b.lcg, b.mg, spec), "twisted_levi_civita");
  run_check(r, "twisted_levi_civita.is_twist", "nabla_{Omega^1_gamma} = phi^-1 Gamma(nabla_{Omega^1})", "basis tables",
            [&]() -> std::optional<std::string> {
              auto d = table_diff(b.lcg, twist_connection(b.lc, b.Cg, b.t));
              if (!d.empty()) return d;
              return std::nullopt;
            });
  run_check(r, "twisted_levi_civita.untwist", "twisting the twisted Levi-Civita connection by gammabar recovers nabla", "basis tables",
            [&]() -> std::optional<std::string> {
              auto t2 = inverse_context(b);
              auto Cgg = twist_calculus(b.Cg, t2);
              auto d = table_diff(twist_connection(b.lcg, Cgg, t2), b.lc);
              if (!d.empty()) return d;
              return std::nullopt;
            });
  if (!s) return r;
  for (const auto& [tag, ch, chg] : {std::make_tuple(std::string("chern_twist_10"), &s->c10, &s->c10g),
                                     std::make_tuple(std::string("chern_twist_01"), &s->c01, &s->c01g)}) {
    run_check(r, tag, "twisted Chern connection = phi^-1 Gamma(nabla_Ch)", "basis tables", [&]() -> std::optional<std::string> {
      auto d = table_diff(chg->conn, twist_connection(ch->conn, b.Cg, b.t));
      if (!d.empty()) return d;
      return std::nullopt;
    });
  }
  r.merge(verify_direct_sum(b.lc, s->c10.conn, b.cs, s->c01.conn, b.opp, spec), "hypothesis");
  r.merge(verify_direct_sum(b.lcg, s->c10g.conn, b.cs, s->c01g.conn, b.opp, spec), "main");
  return r;
}

}  // namespace

Report correspondence_roundtrips(const ModelBundle& b, const SampleSpec& spec) {
  (void)spec;
  Report r;
  run_check(r, "real_hermitian_real", "real metrics <-> Hermitian metrics: real -> Hermitian -> real is the identity", "tables",
            [&]() -> std::optional<std::string> {
              Metric back = real_from_hermitian(hermitian_from_real(b.m), b.C);
              if (back.pairing != b.m.pairing) return std::string("pairing table differs");
              if (back.g != b.m.g) {
                FreeModule O{"Omega^1", b.C->names[1]};
                auto OO = tensor_module(O, O);
                return "g differs: recovered " + vstr(*b.B, *OO, back.g) + " original " + vstr(*b.B, *OO, b.m.g);
              }
              return std::nullopt;
            });
  auto t2 = inverse_context(b);
  auto Cgg = twist_calculus(b.Cg, t2);
  run_check(r, "metric_twist_untwist", "metric -> gamma twist -> gammabar twist is the identity", "tables",
            [&]() -> std::optional<std::string> {
              Metric back = twist_metric(b.mg, Cgg, t2);
              if (back.pairing != b.m.pairing) return std::string("pairing table differs");
              if (back.g != b.m.g) return std::string("g differs");
              return std::nullopt;
            });
  run_check(r, "hermitian_twist_untwist", "Hermitian -> gamma twist -> gammabar twist is the identity", "tables",
            [&]() -> std::optional<std::string> {
              Hermitian back = twist_hermitian(b.Hg, t2);
              if (back.h != b.H.h) return std::string("Hermitian table differs");
              return std::nullopt;
            });
  run_check(r, "twist_hermitian_square", "twist then Hermitian = Hermitian then twist", "tables",
            [&]() -> std::optional<std::string> {
              if (hermitian_from_real(b.mg).h != b.Hg.h) return std::string("H_{g_gamma} != (H_g)_gamma");
              return std::nullopt;
            });
  run_check(r, "structure_tables", "gamma twist then gammabar twist reproduces every structure table", "tables, box 2",
            [&]() -> std::optional<std::string> {
              auto base = structure_tables(*b.B, b.C.get(), &b.m, &b.lc, &b.H, 2).dump();
              Metric mgg = twist_metric(b.mg, Cgg, t2);
              Connection lgg = twist_connection(b.lcg, Cgg, t2);
              Hermitian hgg = twist_hermitian(b.Hg, t2);
              auto back = structure_tables(*t2.Bg, Cgg.get(), &mgg, &lgg, &hgg, 2).dump();
              if (base != back) return std::string("emitted tables differ after the round trip");
              return std::nullopt;
            });
  return r;
}

Report run_suite(const ModelBundle& b, const std::string& suite, const SampleSpec& spec) {
  Report r;
  if (suite == "all") {
    for (const auto& s : suite_names()) r.merge(run_suite(b, s, spec));
    return r;
  }
  Report part;
  if (suite == "hopf") part = suite_hopf(b, spec);
  else if (suite == "cocycle") part = suite_cocycle(b, spec);
  else if (suite == "barfunctor") part = suite_barfunctor(b, spec);
  else if (suite == "calculus") part = suite_calculus(b, spec);
  else if (suite == "metric") part = suite_metric(b, spec);
  else if (suite == "hermitian") part = suite_hermitian(b, spec);
  else if (suite == "chern") part = suite_chern(b, spec);
  else if (suite == "main") part = suite_main(b, spec);
  else throw Error("unknown suite: " + suite);
  r.merge(part, suite);
  r.sort();
  return r;
}

ModelBundle build_verified_model(const ModelParams& params, const SampleSpec& spec) {
  ModelBundle b = build_model(params, spec);
  Report r = run_suite(b, "all", spec);
  if (!r.ok()) {
    const ReportEntry* f = r.first_failure();
    throw ModelError("model " + b.name + " failed verification at " + f->check_id + ": " + f->witness, r);
  }
  return b;
}

nlohmann::json product_table(const ComoduleAlgebra& B, const std::string& op) {
  nlohmann::json out = nlohmann::json::object();
  const auto& gens = B.generators;
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = 0; j < gens.size(); ++j) {
      const auto& [u, lu] = gens[i];
      const auto& [v, lv] = gens[j];
      Elem uv = B.mult(lu, lv);
      const bool ordered = i <= j;
      Elem base = ordered ? uv : B.mult(lv, lu);
      std::string mono = ordered ? u + op + v : v + op + u;
      nlohmann::json entry;
      std::optional<Cyc> ratio;
      if (base.size() == 1 && uv.size() == 1 && base.begin()->first == uv.begin()->first)
        ratio = uv.begin()->second / base.begin()->second;
      if (ratio) {
        entry["coeff"] = ratio->str();
        entry["monomial"] = mono;
      } else {
        entry["value"] = belem_str(B, uv);
      }
      out[u][v] = entry;
    }
  return out;
}

nlohmann::json structure_tables(const ComoduleAlgebra& B, const Calculus* C, const Metric* m,
                                const Connection* lc, const Hermitian* H, int box) {
  nlohmann::json j;
  const auto labels = B.labels(B.finite ? 0 : box);
  for (const auto& a : labels) {
    const std::string sa = monomial_str(B, a);
    j["star"][sa] = belem_str(B, B.star(a));
    for (const auto& b : labels) j["product"][sa][monomial_str(B, b)] = belem_str(B, B.mult(a, b));
  }
  if (!C) return j;
  for (const auto& [kl, tbl] : C->wedge) {
    const auto [k, l] = kl;
    if (k + l > C->top) continue;
    for (size_t i = 0; i < C->rank(k); ++i)
      for (size_t jj = 0; jj < C->rank(l); ++jj)
        j["wedge"][C->names[k][i] + " ^ " + C->names[l][jj]] = form_str(*C, wedge(*C, form_unit(*C, k, i), form_unit(*C, l, jj)));
  }
  for (int k = 1; k <= C->top; ++k)
    for (size_t i = 0; i < C->rank(k); ++i) j["star_forms"][C->names[k][i]] = form_str(*C, star_form(*C, form_unit(*C, k, i)));
  for (const auto& a : labels) j["d"][monomial_str(B, a)] = form_str(*C, dform(*C, form_of(*C, Elem::basis(a))));
  FreeModule O{"Omega^1", C->names[1]};
  auto OO = tensor_module(O, O);
  const size_t n = C->rank(1);
  if (m) {
    j["g"] = vstr(B, *OO, m->g);
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) j["pairing"][O.basis[a] + "," + O.basis[b]] = belem_str(B, m->pairing[a * n + b]);
  }
  if (lc) {
    auto OE = tensor_module(O, FreeModule{"E", lc->basis});
    for (size_t i = 0; i < lc->rank; ++i) j["nabla"][lc->basis[i]] = vstr(B, *OE, lc->nabla[i]);
    for (size_t i = 0; i < lc->sigma.size(); ++i)
      j["sigma"][lc->basis[i / n] + " (x) " + O.basis[i % n]] = vstr(B, *OE, lc->sigma[i]);
  }
  if (H)
    for (size_t a = 0; a < H->basis.size(); ++a)
      for (size_t b = 0; b < H->basis.size(); ++b)
        j["hermitian"][H->basis[a] + ",conj " + H->basis[b]] = belem_str(B, H->h[a][b]);
  return j;
}

nlohmann::json twist_document(const ModelBundle& b, const std::string& stage, int box) {
  nlohmann::json doc;
  doc["schema"] = "cotwist-tables/1";
  doc["model"] = {{"name", b.params.model}, {"p", b.params.p}, {"q", b.params.q}, {"n", b.params.n},
                  {"pairing", b.params.pairing}, {"group", b.params.group}, {"cocycle", b.cocycle->name}};
  doc["box"] = box;
  const bool geo = b.geometric && b.core_ok;
  if (stage == "base") {
    doc["product_gamma"] = product_table(*b.B, "*_g ");
    doc["tables"] = structure_tables(*b.B, geo ? b.C.get() : nullptr, geo ? &b.m : nullptr, geo ? &b.lc : nullptr,
                                     geo ? &b.H : nullptr, box);
  } else if (stage == "twisted") {
    doc["product_gamma"] = product_table(*b.t.Bg, "*_g ");
    doc["tables"] = structure_tables(*b.t.Bg, geo ? b.Cg.get() : nullptr, geo ? &b.mg : nullptr,
                                     geo ? &b.lcg : nullptr, geo ? &b.Hg : nullptr, box);
  } else if (stage == "roundtrip") {
    auto t2 = inverse_context(b);
    doc["product_gamma"] = product_table(*t2.Bg, "*_g ");
    if (geo) {
      auto Cgg = twist_calculus(b.Cg, t2);
      Metric mgg = twist_metric(b.mg, Cgg, t2);
      Connection lgg = twist_connection(b.lcg, Cgg, t2);
      Hermitian hgg = twist_hermitian(b.Hg, t2);
      doc["tables"] = structure_tables(*t2.Bg, Cgg.get(), &mgg, &lgg, &hgg, box);
    } else {
      doc["tables"] = structure_tables(*t2.Bg, nullptr, nullptr, nullptr, nullptr, box);
    }
  } else {
    throw Error("unknown stage: " + stage + " (expected base, twisted or roundtrip)");
  }
  return doc;
}

}  // namespace cotwist
