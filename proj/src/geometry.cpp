#include "cotwist/geometry.hpp"

#include <sstream>

#include "cotwist/linalg.hpp"

namespace cotwist {

namespace {

using SampleFn = std::function<std::optional<std::string>(Sampler&)>;

void sampled(Report& r, const SampleSpec& spec, const std::string& id, const std::string& anchor,
             const std::string& what, uint64_t salt, const SampleFn& f) {
  run_check(r, id, anchor, sampled_spec(spec, what), [&]() { return sample_sweep(spec.samples, spec.seed, salt, f); });
}

std::map<Label, Vec> nonzero(std::map<Label, Vec> m) {
  for (auto it = m.begin(); it != m.end();) {
    if (vis_zero(it->second)) it = m.erase(it);
    else ++it;
  }
  return m;
}

std::map<Label, Elem> nonzero(std::map<Label, Elem> m) {
  for (auto it = m.begin(); it != m.end();) {
    if (it->second.is_zero()) it = m.erase(it);
    else ++it;
  }
  return m;
}

FreeModule module_of(const std::string& name, const std::vector<std::string>& basis) { return FreeModule{name, basis}; }

FreeModule omega1(const Calculus& C) { return module_of("Omega^1", C.names[1]); }

FreeModule tensor_of(const FreeModule& E, const FreeModule& F) { return *tensor_module(E, F); }

// Coaction covariance of a map f: V -> W, both with central coinvariant bases.
std::optional<std::string> covariant_at(const ComoduleAlgebra& B, const Vec& v, const std::function<Vec(const Vec&)>& f) {
  auto lhs = nonzero(vcoact(B, f(v)));
  std::map<Label, Vec> rhs;
  for (const auto& [a, va] : vcoact(B, v)) {
    Vec w = f(va);
    auto& slot = rhs[a];
    slot = slot.empty() ? w : vadd(std::move(slot), w);
  }
  if (lhs != nonzero(rhs)) return std::string("coaction mismatch");
  return std::nullopt;
}

std::optional<std::vector<std::vector<Cyc>>> scalar_matrix(const ComoduleAlgebra& B, const std::vector<Vec>& h) {
  std::vector<std::vector<Cyc>> M;
  for (const auto& row : h) {
    std::vector<Cyc> out;
    for (const auto& e : row) {
      auto s = scalar_of(B, e);
      if (!s) return std::nullopt;
      out.push_back(*s);
    }
    M.push_back(out);
  }
  return M;
}

}  // namespace

Elem metric_pair(const Metric& m, const Vec& a, const Vec& b) {
  const auto& B = *m.C->B;
  const size_t r = m.C->rank(1);
  Elem out;
  for (size_t i = 0; i < r; ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < r; ++j) {
      if (b[j].is_zero() || m.pairing[i * r + j].is_zero()) continue;
      out += bmult(B, bmult(B, a[i], m.pairing[i * r + j]), b[j]);
    }
  }
  return out;
}

Elem metric_pair_tensor(const Metric& m, const Vec& t) {
  const auto& B = *m.C->B;
  Elem out;
  for (size_t ij = 0; ij < t.size(); ++ij)
    if (!t[ij].is_zero() && !m.pairing[ij].is_zero()) out += bmult(B, t[ij], m.pairing[ij]);
  return out;
}

Vec dagger(const Calculus& C, const Vec& t) {
  const size_t r = C.rank(1);
  const auto& B = *C.B;
  Vec out(r * r);
  for (size_t j = 0; j < r; ++j)
    for (size_t k = 0; k < r; ++k) {
      const Elem& c = t[j * r + k];
      if (c.is_zero()) continue;
      Form w = form_zero(C, 1);
      w.c[j] = c;
      out = vadd(std::move(out), vtensor(B, star_form(C, form_unit(C, 1, k)).c, star_form(C, w).c));
    }
  return out;
}

Report verify_metric(const Metric& m, const SampleSpec& spec) {
  Report r;
  const Calculus& C = *m.C;
  const auto& B = *C.B;
  const size_t n = C.rank(1);
  const FreeModule O = omega1(C);
  auto snake_left = [&](const Vec& w) {
    Vec out(n);
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        const Elem& g = m.g[j * n + k];
        if (g.is_zero()) continue;
        Vec gj(n);
        gj[j] = g;
        out[k] += metric_pair(m, w, gj);
      }
    return out;
  };
  auto snake_right = [&](const Vec& w) {
    Vec out(n);
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        const Elem& g = m.g[j * n + k];
        if (g.is_zero()) continue;
        out[j] += bmult(B, g, metric_pair(m, vunit(B, n, k), w));
      }
    return out;
  };
  run_check(r, "snake_basis", "metric: ((w, ) (x) id) g = w = (id (x) ( , w)) g", "basis", [&]() -> std::optional<std::string> {
    for (size_t i = 0; i < n; ++i) {
      Vec e = vunit(B, n, i);
      if (snake_left(e) != e) return "left snake at " + C.names[1][i] + " gives " + vstr(B, O, snake_left(e));
      if (snake_right(e) != e) return "right snake at " + C.names[1][i] + " gives " + vstr(B, O, snake_right(e));
    }
    return std::nullopt;
  });
  sampled(r, spec, "snake_sampled", "metric: snake identities on sampled one-forms", "one-forms", 71,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec w = sample_vec(B, n, spec.box, s);
            if (snake_left(w) != w) return "left snake at w=" + vstr(B, O, w);
            if (snake_right(w) != w) return "right snake at w=" + vstr(B, O, w);
            return std::nullopt;
          });
  sampled(r, spec, "g_central", "metric: g is central", "elements", 72, [&](Sampler& s) -> std::optional<std::string> {
    Elem b = sample_belem(B, spec.box, s, 2);
    if (vrmul(B, m.g, b) != vlmul(B, b, m.g)) return "g b != b g at b=" + belem_str(B, b);
    return std::nullopt;
  });
  run_check(r, "g_coinvariant", "metric: delta(g) = 1 (x) g", "g", [&]() -> std::optional<std::string> {
    auto co = nonzero(vcoact(B, m.g));
    const Label& one = B.A->unit.begin()->first;
    if (co.size() != 1 || co.begin()->first != one || co.begin()->second != m.g) return std::string("g is not coinvariant");
    return std::nullopt;
  });
  sampled(r, spec, "pairing_covariant", "metric: ( , ) is a comodule map", "pairs", 73,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec a = sample_vec(B, n, spec.box, s), b = sample_vec(B, n, spec.box, s);
            auto lhs = nonzero(coact_split(B, metric_pair(m, a, b)));
            std::map<Label, Elem> rhs;
            for (const auto& [x, ax] : vcoact(B, a))
              for (const auto& [y, by] : vcoact(B, b)) {
                Elem p = metric_pair(m, ax, by);
                for (const auto& [z, c] : B.A->mult(x, y)) rhs[z] += c * p;
              }
            if (lhs != nonzero(rhs)) return "coaction mismatch at a=" + vstr(B, O, a) + " b=" + vstr(B, O, b);
            return std::nullopt;
          });
  run_check(r, "real", "real metric: g^dagger = g", "g", [&]() -> std::optional<std::string> {
    Vec gd = dagger(C, m.g);
    if (gd != m.g) {
      auto OO = tensor_of(O, O);
      return "g^dagger=" + vstr(B, OO, gd) + " g=" + vstr(B, OO, m.g);
    }
    return std::nullopt;
  });
  return r;
}

Report verify_diamond(const Metric& m, const ComplexStructure& cs) {
  Report r;
  const Calculus& C = *m.C;
  run_check(r, "diamond", "diamond condition: (Omega^(1,0), Omega^(1,0)) = 0 = (Omega^(0,1), Omega^(0,1))", "frames",
            [&]() -> std::optional<std::string> {
              for (auto pq : {std::make_pair(1, 0), std::make_pair(0, 1)}) {
                auto idx = cs.indices(pq.first, pq.second);
                for (size_t a = 0; a < idx.size(); ++a)
                  for (size_t b = 0; b < idx.size(); ++b) {
                    Form fa = from_pq(C, cs, pq.first, pq.second, vunit(*C.B, idx.size(), a));
                    Form fb = from_pq(C, cs, pq.first, pq.second, vunit(*C.B, idx.size(), b));
                    Elem v = metric_pair(m, fa.c, fb.c);
                    if (!v.is_zero())
                      return "(" + cs.names[1][idx[a]] + ", " + cs.names[1][idx[b]] + ") = " + belem_str(*C.B, v);
                  }
              }
              return std::nullopt;
            });
  return r;
}

Metric twist_metric(const Metric& m, CalcPtr Cg, const TwistContext& t) {
  Metric mg;
  mg.C = Cg;
  const size_t n = m.C->rank(1);
  mg.pairing.resize(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      mg.pairing[i * n + j] = metric_pair_tensor(m, phi_pure(t, vunit(*t.Bg, n, i), vunit(*t.Bg, n, j)));
  mg.g = phi_inv_nf(t, m.g, n, n);
  return mg;
}

Report verify_twisted_metric(const Metric& m, const Metric& mg, const TwistContext& t, const SampleSpec& spec) {
  Report r;
  const Calculus& C = *m.C;
  const Calculus& Cg = *mg.C;
  const auto& B = *t.B;
  const size_t n = C.rank(1);
  const FreeModule O = omega1(C);
  sampled(r, spec, "pairing_formula", "twisted metric: (w, h)_gamma = ( , ) phi(w (x)_g h)", "pairs", 74,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec a = sample_vec(B, n, spec.box, s), b = sample_vec(B, n, spec.box, s);
            Elem lhs = metric_pair(mg, a, b), rhs = metric_pair_tensor(m, phi_pure(t, a, b));
            if (lhs != rhs) return "a=" + vstr(B, O, a) + " b=" + vstr(B, O, b) + ": lhs=" + belem_str(B, lhs) + " rhs=" + belem_str(B, rhs);
            return std::nullopt;
          });
  run_check(r, "g_phi_inverse", "twisted metric: g_gamma = phi^-1(g)", "g", [&]() -> std::optional<std::string> {
    if (phi_nf(t, mg.g, n, n) != m.g) return std::string("phi(g_gamma) != g");
    return std::nullopt;
  });
  sampled(r, spec, "reality_transport",
          "twisted reality: dagger_g(phi^-1(w (x) h)) = phi^-1(h^*_0 (x) w^*_0) Vbar(h^*_-1 w^*_-1)", "pairs", 75,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec a = sample_vec(B, n, spec.box, s), b = sample_vec(B, n, spec.box, s);
            Vec lhs = dagger(Cg, phi_inv_nf(t, vtensor(B, a, b), n, n));
            Vec rhs(n * n);
            const auto& A = *t.c->A;
            for (const auto& [x, bx] : vcoact(B, star_form(C, Form{1, b}).c))
              for (const auto& [y, ay] : vcoact(B, star_form(C, Form{1, a}).c)) {
                Cyc v = eval_lin(t.c->Vbar, A.mult(x, y));
                if (!v.is_zero()) rhs = vadd(std::move(rhs), vscale(v, phi_inv_nf(t, vtensor(B, bx, ay), n, n)));
              }
            if (lhs != rhs) return "w=" + vstr(B, O, a) + " h=" + vstr(B, O, b);
            return std::nullopt;
          });
  return r;
}

Vec connection_apply(const Connection& c, const Vec& v) {
  const Calculus& C = *c.C;
  const auto& B = *C.B;
  Vec out(C.rank(1) * c.rank);
  for (size_t i = 0; i < c.rank; ++i) {
    if (v[i].is_zero()) continue;
    out = vadd(std::move(out), vtensor(B, dform(C, form_of(C, v[i])).c, vunit(B, c.rank, i)));
    out = vadd(std::move(out), vlmul(B, v[i], c.nabla[i]));
  }
  return out;
}

Vec sigma_apply(const Connection& c, const Vec& x) {
  const Calculus& C = *c.C;
  if (c.sigma.empty()) throw Error("connection has no bimodule map");
  return vapply(*C.B, c.sigma, x);
}

Form torsion(const Connection& c, const Vec& v) {
  const Calculus& C = *c.C;
  return fsub(wedge_tensor(C, 1, 1, connection_apply(c, v)), dform(C, Form{1, v}));
}

Vec metric_compat(const Connection& c, const Metric& m) {
  const Calculus& C = *c.C;
  const auto& B = *C.B;
  const size_t n = C.rank(1);
  Vec out(n * n * n);
  for (size_t j = 0; j < n; ++j)
    for (size_t k = 0; k < n; ++k) {
      const Elem& g = m.g[j * n + k];
      if (g.is_zero()) continue;
      Vec v(n);
      v[j] = g;
      Vec w = vunit(B, n, k);
      out = vadd(std::move(out), vtensor(B, connection_apply(c, v), w));
      Vec vw = vtensor(B, v, connection_apply(c, w));  // index i * n^2 + (k' * n + l)
      for (size_t i = 0; i < n; ++i)
        for (size_t kl = 0; kl < n * n; ++kl) {
          const Elem& x = vw[i * n * n + kl];
          if (x.is_zero()) continue;
          const size_t kk = kl / n, l = kl % n;
          Vec sg = vlmul(B, x, c.sigma[i * n + kk]);
          out = vadd(std::move(out), vtensor(B, sg, vunit(B, n, l)));
        }
    }
  return out;
}

Report verify_connection(const Connection& c, const SampleSpec& spec) {
  Report r;
  const Calculus& C = *c.C;
  const auto& B = *C.B;
  const size_t n = C.rank(1);
  const FreeModule E = module_of("E", c.basis);
  sampled(r, spec, "left_leibniz", "connection: nabla(b e) = b nabla(e) + db (x) e", "(b, e)", 81,
          [&](Sampler& s) -> std::optional<std::string> {
            Elem b = sample_belem(B, spec.box, s, 2);
            Vec v = sample_vec(B, c.rank, spec.box, s);
            Vec lhs = connection_apply(c, vlmul(B, b, v));
            Vec rhs = vadd(vlmul(B, b, connection_apply(c, v)), vtensor(B, dform(C, form_of(C, b)).c, v));
            if (lhs != rhs) return "b=" + belem_str(B, b) + " e=" + vstr(B, E, v);
            return std::nullopt;
          });
  if (!c.sigma.empty()) {
    sampled(r, spec, "right_leibniz", "bimodule connection: nabla(e b) = nabla(e) b + sigma(e (x) db)", "(e, b)", 82,
            [&](Sampler& s) -> std::optional<std::string> {
              Elem b = sample_belem(B, spec.box, s, 2);
              Vec v = sample_vec(B, c.rank, spec.box, s);
              Vec lhs = connection_apply(c, vrmul(B, v, b));
              Vec rhs = vadd(vrmul(B, connection_apply(c, v), b), sigma_apply(c, vtensor(B, v, dform(C, form_of(C, b)).c)));
              if (lhs != rhs) {
                auto OE = tensor_of(omega1(C), E);
                return "e=" + vstr(B, E, v) + " b=" + belem_str(B, b) + ": lhs=" + vstr(B, OE, lhs) + " rhs=" + vstr(B, OE, rhs);
              }
              return std::nullopt;
            });
    sampled(r, spec, "sigma_bimodule", "bimodule connection: sigma is a bimodule map", "(x, b)", 83,
            [&](Sampler& s) -> std::optional<std::string> {
              Elem b = sample_belem(B, spec.box, s, 2);
              Vec x = sample_vec(B, c.rank * n, spec.box, s);
              if (sigma_apply(c, vrmul(B, x, b)) != vrmul(B, sigma_apply(c, x), b)) return "b=" + belem_str(B, b);
              if (sigma_apply(c, vlmul(B, b, x)) != vlmul(B, b, sigma_apply(c, x))) return "b=" + belem_str(B, b);
              return std::nullopt;
            });
  }
  sampled(r, spec, "covariant", "covariant connection: nabla is a comodule map", "elements", 84,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec v = sample_vec(B, c.rank, spec.box, s);
            auto w = covariant_at(B, v, [&](const Vec& x) { return connection_apply(c, x); });
            if (w) return *w + " at e=" + vstr(B, E, v);
            return std::nullopt;
          });
  return r;
}

Report levi_civita_verify(const Connection& c, const Metric& m, const SampleSpec& spec) {
  Report r;
  const Calculus& C = *c.C;
  const auto& B = *C.B;
  const size_t n = C.rank(1);
  run_check(r, "torsion_basis", "Levi-Civita: wedge nabla - d = 0", "basis", [&]() -> std::optional<std::string> {
    for (size_t i = 0; i < n; ++i) {
      Form T = torsion(c, vunit(B, n, i));
      if (!fis_zero(T)) return "T(" + C.names[1][i] + ") = " + form_str(C, T);
    }
    return std::nullopt;
  });
  sampled(r, spec, "torsion_sampled", "Levi-Civita: torsion vanishes on sampled one-forms", "one-forms", 85,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec v = sample_vec(B, n, spec.box, s);
            Form T = torsion(c, v);
            if (!fis_zero(T)) return "T(" + vstr(B, omega1(C), v) + ") = " + form_str(C, T);
            return std::nullopt;
          });
  run_check(r, "metric_compatible", "Levi-Civita: nabla_{Omega^1 (x) Omega^1} g = 0", "g", [&]() -> std::optional<std::string> {
    if (c.sigma.empty()) return std::string("no bimodule map");
    Vec v = metric_compat(c, m);
    if (!vis_zero(v)) {
      auto O = omega1(C);
      return "nabla g = " + vstr(B, tensor_of(tensor_of(O, O), O), v);
    }
    return std::nullopt;
  });
  return r;
}

Connection twist_connection(const Connection& c, CalcPtr Cg, const TwistContext& t) {
  Connection g = c;
  g.C = Cg;
  const size_t n = c.C->rank(1);
  for (auto& v : g.nabla) v = phi_inv_nf(t, v, n, c.rank);
  for (auto& v : g.sigma) v = phi_inv_nf(t, v, n, c.rank);
  return g;
}

Report verify_twisted_connection(const Connection& c, const Connection& cg, const TwistContext& t,
                                 const SampleSpec& spec) {
  Report r;
  const auto& B = *t.B;
  const size_t n = c.C->rank(1);
  const FreeModule E = module_of("E", c.basis);
  sampled(r, spec, "nabla_formula", "twisted connection: nabla_{Gamma E} = phi^-1 Gamma(nabla_E)", "elements", 86,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec v = sample_vec(B, c.rank, spec.box, s);
            if (connection_apply(cg, v) != phi_inv_nf(t, connection_apply(c, v), n, c.rank)) return "e=" + vstr(B, E, v);
            return std::nullopt;
          });
  if (!c.sigma.empty())
    sampled(r, spec, "sigma_formula", "twisted bimodule map: sigma_gamma = phi^-1 Gamma(sigma) phi", "elements", 87,
            [&](Sampler& s) -> std::optional<std::string> {
              Vec x = sample_vec(B, c.rank * n, spec.box, s);
              Vec lhs = sigma_apply(cg, x);
              Vec rhs = phi_inv_nf(t, sigma_apply(c, phi_nf(t, x, c.rank, n)), n, c.rank);
              if (lhs != rhs) return std::string("mismatch on sampled E (x) Omega^1 element");
              return std::nullopt;
            });
  return r;
}

Vec conj_right_connection(const Connection& c, const Vec& z) {
  const Calculus& C = *c.C;
  const auto& B = *C.B;
  const size_t n = C.rank(1), r = c.rank;
  Vec out(r * n);
  for (size_t i = 0; i < r; ++i) {
    if (z[i].is_zero()) continue;
    Vec part(r * n);
    for (size_t k = 0; k < n; ++k)
      for (size_t j = 0; j < r; ++j) {
        const Elem& x = c.nabla[i][k * r + j];
        if (x.is_zero()) continue;
        Form w = form_zero(C, 1);
        w.c[k] = x;
        part = vadd(std::move(part), vtensor(B, vunit(B, r, j), star_form(C, w).c));
      }
    out = vadd(std::move(out), vrmul(B, part, z[i]));
    out = vadd(std::move(out), vtensor(B, vunit(B, r, i), dform(C, form_of(C, z[i])).c));
  }
  return out;
}

namespace {

// nablatilde(vbar) from nabla(v) = sum Y_kj omega_k (x) e_j: sum ebar_j (x) (Y_kj omega_k)^*.
Vec conj_from_pure(const Connection& c, const Vec& v) {
  const Calculus& C = *c.C;
  const auto& B = *C.B;
  const size_t n = C.rank(1), r = c.rank;
  Vec nv = connection_apply(c, v);
  Vec out(r * n);
  for (size_t k = 0; k < n; ++k)
    for (size_t j = 0; j < r; ++j) {
      const Elem& y = nv[k * r + j];
      if (y.is_zero()) continue;
      Form w = form_zero(C, 1);
      w.c[k] = y;
      out = vadd(std::move(out), vtensor(B, vunit(B, r, j), star_form(C, w).c));
    }
  return out;
}

}  // namespace

Report verify_conj_connection(const Connection& c, const SampleSpec& spec) {
  Report r;
  const Calculus& C = *c.C;
  const auto& B = *C.B;
  const FreeModule E = module_of("E", c.basis);
  sampled(r, spec, "conj_right_leibniz", "conjugate right connection: nablatilde(z b) = nablatilde(z) b + z (x) db", "(z, b)", 88,
          [&](Sampler& s) -> std::optional<std::string> {
            Elem b = sample_belem(B, spec.box, s, 2);
            Vec z = sample_vec(B, c.rank, spec.box, s);
            Vec lhs = conj_right_connection(c, vrmul(B, z, b));
            Vec rhs = vadd(vrmul(B, conj_right_connection(c, z), b), vtensor(B, z, dform(C, form_of(C, b)).c));
            if (lhs != rhs) return "z=" + vstr(B, *bar_module(E), z) + " b=" + belem_str(B, b);
            return std::nullopt;
          });
  sampled(r, spec, "conj_component_formula",
          "conjugate right connection: nablatilde(ebar) = sum ebar_i (x) w_i^* for nabla(e) = sum w_i (x) e_i", "elements", 89,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec v = sample_vec(B, c.rank, spec.box, s);
            if (conj_right_connection(c, vbar(B, v)) != conj_from_pure(c, v)) return "e=" + vstr(B, E, v);
            return std::nullopt;
          });
  sampled(r, spec, "conj_covariant", "conjugate right connection is covariant", "elements", 90,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec z = sample_vec(B, c.rank, spec.box, s);
            auto w = covariant_at(B, z, [&](const Vec& x) { return conj_right_connection(c, x); });
            if (w) return *w + " at z=" + vstr(B, *bar_module(E), z);
            return std::nullopt;
          });
  return r;
}

Report verify_conj_twist(const Connection& c, const Connection& cg, const TwistContext& t, const SampleSpec& spec) {
  Report r;
  const auto& Bg = *t.Bg;
  const size_t n = c.C->rank(1), rk = c.rank;
  const FreeModule E = module_of("E", c.basis);
  sampled(r, spec, "conj_twist_commutes",
          "twisted conjugate connection: nablatilde_{Gamma E} = (N^-1 (x) id) phi^-1 Gamma(nablatilde_E) N", "elements", 91,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec z = sample_vec(Bg, rk, spec.box, s);
            Vec lhs = conj_right_connection(cg, z);
            Vec u = phi_inv_nf(t, conj_right_connection(c, frak_N(t, z)), rk, n);
            Vec rhs(rk * n);
            for (size_t j = 0; j < rk; ++j)
              for (size_t k = 0; k < n; ++k) {
                const Elem& x = u[j * n + k];
                if (x.is_zero()) continue;
                Vec zj(rk);
                zj[j] = x;
                rhs = vadd(std::move(rhs), vtensor(Bg, frak_N_inv(t, zj), vunit(Bg, n, k)));
              }
            if (lhs != rhs) {
              auto EO = tensor_of(*bar_module(E), omega1(*cg.C));
              return "z=" + vstr(Bg, *bar_module(E), z) + ": lhs=" + vstr(Bg, EO, lhs) + " rhs=" + vstr(Bg, EO, rhs);
            }
            return std::nullopt;
          });
  return r;
}

Elem herm_pair(const Hermitian& H, const Vec& x, const Vec& z) {
  const auto& B = *H.B;
  Elem out;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (size_t j = 0; j < z.size(); ++j) {
      if (z[j].is_zero() || H.h[i][j].is_zero()) continue;
      out += bmult(B, bmult(B, x[i], H.h[i][j]), z[j]);
    }
  }
  return out;
}

Hermitian hermitian_from_real(const Metric& m) {
  const Calculus& C = *m.C;
  const size_t n = C.rank(1);
  Hermitian H{C.B, C.names[1], std::vector<Vec>(n, Vec(n))};
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      H.h[i][j] = metric_pair(m, vunit(*C.B, n, i), star_form(C, form_unit(C, 1, j)).c);
  return H;
}

Metric real_from_hermitian(const Hermitian& H, CalcPtr C) {
  const size_t n = C->rank(1);
  const auto& B = *C->B;
  Metric m;
  m.C = C;
  m.pairing.resize(n * n);
  std::vector<std::vector<Cyc>> P(n, std::vector<Cyc>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Elem p = herm_pair(H, vunit(B, n, i), vbar(B, star_form(*C, form_unit(*C, 1, j)).c));
      m.pairing[i * n + j] = p;
      auto sc = scalar_of(B, p);
      if (!sc) throw Error("Hermitian table is not scalar");
      P[i][j] = *sc;
    }
  auto G = invert_matrix(P);
  if (!G) throw Error("pairing recovered from the Hermitian metric is singular");
  m.g.assign(n * n, Elem());
  for (size_t j = 0; j < n; ++j)
    for (size_t k = 0; k < n; ++k)
      if (!(*G)[j][k].is_zero()) m.g[j * n + k] = (*G)[j][k] * B.unit;
  return m;
}

Report verify_hermitian(const Hermitian& H, const SampleSpec& spec, const Metric* m) {
  Report r;
  const auto& B = *H.B;
  const size_t n = H.basis.size();
  const FreeModule E = module_of("E", H.basis);
  sampled(r, spec, "conj_symmetric", "Hermitian metric: <y, xbar>^* = <x, ybar>", "pairs", 92,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec x = sample_vec(B, n, spec.box, s), y = sample_vec(B, n, spec.box, s);
            Elem lhs = bstar(B, herm_pair(H, y, vbar(B, x))), rhs = herm_pair(H, x, vbar(B, y));
            if (lhs != rhs) return "x=" + vstr(B, E, x) + " y=" + vstr(B, E, y) + ": lhs=" + belem_str(B, lhs) + " rhs=" + belem_str(B, rhs);
            return std::nullopt;
          });
  if (m)
    sampled(r, spec, "real_pairing", "Hermitian metric of a real metric: <w, hbar> = (w, h^*)", "pairs", 93,
            [&](Sampler& s) -> std::optional<std::string> {
              const Calculus& C = *m->C;
              Vec x = sample_vec(B, n, spec.box, s), y = sample_vec(B, n, spec.box, s);
              Elem lhs = herm_pair(H, x, vbar(B, y)), rhs = metric_pair(*m, x, star_form(C, Form{1, y}).c);
              if (lhs != rhs) return "w=" + vstr(B, E, x) + " h=" + vstr(B, E, y);
              return std::nullopt;
            });
  run_check(r, "invertible", "Hermitian metric: H is an isomorphism", "table", [&]() -> std::optional<std::string> {
    auto M = scalar_matrix(B, H.h);
    if (!M) return std::string("Hermitian table has non-scalar entries");
    if (!invert_matrix(*M)) return std::string("Hermitian table is singular");
    return std::nullopt;
  });
  sampled(r, spec, "hermitian_covariant", "covariant Hermitian metric: delta<x, ybar> = x_-1 ybar_-1 (x) <x_0, ybar_0>", "pairs", 94,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec x = sample_vec(B, n, spec.box, s), z = sample_vec(B, n, spec.box, s);
            auto lhs = nonzero(coact_split(B, herm_pair(H, x, z)));
            std::map<Label, Elem> rhs;
            for (const auto& [a, xa] : vcoact(B, x))
              for (const auto& [b, zb] : vcoact(B, z)) {
                Elem p = herm_pair(H, xa, zb);
                for (const auto& [l, c] : B.A->mult(a, b)) rhs[l] += c * p;
              }
            if (lhs != nonzero(rhs)) return "x=" + vstr(B, E, x);
            return std::nullopt;
          });
  return r;
}

namespace {

Elem block_entry(const Hermitian& H, const ComplexStructure& cs, size_t ra, size_t sb) {
  const auto& F = cs.frame[1];
  Elem out;
  for (size_t i = 0; i < F.size(); ++i)
    for (size_t j = 0; j < F.size(); ++j) {
      Cyc w = F[ra][i] * F[sb][j].conj();
      if (!w.is_zero() && !H.h[i][j].is_zero()) out += w * H.h[i][j];
    }
  return out;
}

}  // namespace

HermitianSplit split_hermitian(const Hermitian& H, const ComplexStructure& cs) {
  HermitianSplit out;
  auto make = [&](int p, int q) {
    auto idx = cs.indices(p, q);
    Hermitian h{H.B, {}, std::vector<Vec>(idx.size(), Vec(idx.size()))};
    for (size_t a = 0; a < idx.size(); ++a) {
      h.basis.push_back(cs.names[1][idx[a]]);
      for (size_t b = 0; b < idx.size(); ++b) h.h[a][b] = block_entry(H, cs, idx[a], idx[b]);
    }
    return h;
  };
  out.h10 = make(1, 0);
  out.h01 = make(0, 1);
  return out;
}

Report verify_split(const Hermitian& H, const ComplexStructure& cs) {
  Report r;
  run_check(r, "split_off_block", "splitting: H maps conj(Omega^(1,0)) and conj(Omega^(0,1)) into matching dual blocks", "frames",
            [&]() -> std::optional<std::string> {
              auto i10 = cs.indices(1, 0), i01 = cs.indices(0, 1);
              for (size_t a : i10)
                for (size_t b : i01) {
                  Elem x = block_entry(H, cs, a, b), y = block_entry(H, cs, b, a);
                  if (!x.is_zero()) return "<" + cs.names[1][a] + ", conj " + cs.names[1][b] + "> = " + belem_str(*H.B, x);
                  if (!y.is_zero()) return "<" + cs.names[1][b] + ", conj " + cs.names[1][a] + "> = " + belem_str(*H.B, y);
                }
              return std::nullopt;
            });
  run_check(r, "split_invertible", "splitting: each diagonal block is invertible", "frames", [&]() -> std::optional<std::string> {
    auto sp = split_hermitian(H, cs);
    for (const auto* h : {&sp.h10, &sp.h01}) {
      auto M = scalar_matrix(*H.B, h->h);
      if (!M || !invert_matrix(*M)) return std::string("diagonal block is not invertible");
    }
    return std::nullopt;
  });
  return r;
}

Elem herm_pair_twisted(const Hermitian& H, const TwistContext& t, const Vec& x, const Vec& z) {
  const auto& B = *t.B;
  Vec w = frak_N(t, z);
  const size_t n = H.basis.size();
  std::vector<Elem> f(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (!H.h[i][j].is_zero() && !w[j].is_zero()) f[i] += bmult(B, H.h[i][j], w[j]);
  return frak_S(t, f, x);
}

Hermitian twist_hermitian(const Hermitian& H, const TwistContext& t) {
  const size_t n = H.basis.size();
  Hermitian g{t.Bg, H.basis, std::vector<Vec>(n, Vec(n))};
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) g.h[i][j] = herm_pair_twisted(H, t, vunit(*t.Bg, n, i), vunit(*t.Bg, n, j));
  return g;
}

Report verify_twisted_hermitian(const Hermitian& H, const Hermitian& Hg, const TwistContext& t,
                                const SampleSpec& spec) {
  Report r;
  const auto& B = *t.B;
  const auto& Bg = *t.Bg;
  const auto& A = *t.c->A;
  const size_t n = H.basis.size();
  const FreeModule E = module_of("E", H.basis);
  sampled(r, spec, "table_vs_composite", "twisted Hermitian metric: H_gamma = S Gamma(H) N", "pairs", 95,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec x = sample_vec(Bg, n, spec.box, s), z = sample_vec(Bg, n, spec.box, s);
            Elem a = herm_pair(Hg, x, z), b = herm_pair_twisted(H, t, x, z);
            if (a != b) return "x=" + vstr(Bg, E, x) + ": table=" + belem_str(Bg, a) + " composite=" + belem_str(Bg, b);
            return std::nullopt;
          });
  sampled(r, spec, "pairing_relation",
          "twisted Hermitian pairing: <x, ybar>_gamma = Vbar(y_-2^*) gamma(x_-1, y_-1^*) <x_0, ybar_0>", "pairs", 96,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec x = sample_vec(Bg, n, spec.box, s), y = sample_vec(Bg, n, spec.box, s);
            Elem lhs = herm_pair(Hg, x, vbar(Bg, y));
            Elem rhs;
            auto cx = vcoact(B, x);
            for (const auto& [a, ya] : vcoact(B, y)) {
              Vec yb = vbar(B, ya);
              for (const auto& [k, c] : A.coproduct(a)) {
                Cyc v = c.conj() * eval_lin(t.c->Vbar, A.star(k[0]));
                if (v.is_zero()) continue;
                Elem s2 = A.star(k[1]);
                for (const auto& [b, xb] : cx) {
                  Cyc w = v * eval_pair(t.c->gamma, Elem::basis(b), s2);
                  if (!w.is_zero()) rhs += w * herm_pair(H, xb, yb);
                }
              }
            }
            if (lhs != rhs) return "x=" + vstr(Bg, E, x) + " y=" + vstr(Bg, E, y) + ": lhs=" + belem_str(Bg, lhs) + " rhs=" + belem_str(B, rhs);
            return std::nullopt;
          });
  r.merge(verify_hermitian(Hg, spec), "twisted");
  return r;
}

Report verify_hermitian_coherence(const Metric& mg, const Hermitian& Hg, const SampleSpec& spec) {
  Report r;
  const auto& Bg = *Hg.B;
  const size_t n = Hg.basis.size();
  Hermitian Hm = hermitian_from_real(mg);
  run_check(r, "coherence_table", "H_{g_gamma} = (H_g)_gamma on all basis pairs", "basis pairs", [&]() -> std::optional<std::string> {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (Hm.h[i][j] != Hg.h[i][j])
          return "entry (" + Hg.basis[i] + ", " + Hg.basis[j] + "): metric route " + belem_str(Bg, Hm.h[i][j]) +
                 " vs twist route " + belem_str(Bg, Hg.h[i][j]);
    return std::nullopt;
  });
  sampled(r, spec, "coherence_sampled", "H_{g_gamma} = (H_g)_gamma on sampled pairs", "pairs", 97,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec x = sample_vec(Bg, n, spec.box, s), y = sample_vec(Bg, n, spec.box, s);
            Elem a = herm_pair(Hg, x, vbar(Bg, y));
            Elem b = metric_pair(mg, x, star_form(*mg.C, Form{1, y}).c);
            if (a != b) return "x=" + vstr(Bg, FreeModule{"E", Hg.basis}, x);
            return std::nullopt;
          });
  return r;
}

namespace {

using Residual = std::map<std::string, Elem>;

struct ChernProblem {
  const HoloModule& h;
  const Hermitian& H;
  size_t n1 = 0, rk = 0;
  std::vector<Vec> dbar;        // dbar_E(e_r)
  std::vector<Vec> dh;          // d<e_a, ebar_b>, index a * rk + b
  Label one;

  Residual eval(const std::vector<Vec>& X) const {
    const Calculus& C = *h.C;
    const auto& B = *C.B;
    Residual R;
    auto put = [&](const std::string& key, const Elem& e) {
      if (!e.is_zero()) R[key] += e;
    };
    for (size_t r = 0; r < rk; ++r) {
      // (pi^{0,1} (x) id) nabla = dbar_E
      for (size_t s = 0; s < rk; ++s) {
        Form w = form_zero(C, 1);
        for (size_t k = 0; k < n1; ++k) w.c[k] = X[r][k * rk + s];
        Vec p = to_pq(h.cs, w, 0, 1);
        for (size_t u = 0; u < p.size(); ++u)
          put("dbar " + std::to_string(r) + " " + std::to_string(u) + " " + std::to_string(s), p[u] - dbar[r][u * rk + s]);
      }
      // covariance of nabla(e_r)
      for (size_t ks = 0; ks < n1 * rk; ++ks) {
        const Elem& e = X[r][ks];
        auto split = coact_split(B, e);
        split[one] -= e;
        for (const auto& [a, part] : split) put("cov " + std::to_string(r) + " " + std::to_string(ks) + " " + a.str(), part);
      }
    }
    // compatibility on basis pairs
    for (size_t a = 0; a < rk; ++a)
      for (size_t b = 0; b < rk; ++b) {
        Vec rhs(n1);
        for (size_t k = 0; k < n1; ++k)
          for (size_t j = 0; j < rk; ++j) {
            const Elem& x = X[a][k * rk + j];
            if (!x.is_zero() && !H.h[j][b].is_zero()) rhs[k] += bmult(B, x, H.h[j][b]);
            const Elem& y = X[b][k * rk + j];
            if (y.is_zero() || H.h[a][j].is_zero()) continue;
            Form w = form_zero(C, 1);
            w.c[k] = y;
            rhs = vadd(std::move(rhs), vlmul(B, H.h[a][j], star_form(C, w).c));
          }
        Vec diff = vsub(rhs, dh[a * rk + b]);
        for (size_t k = 0; k < n1; ++k) put("compat " + std::to_string(a) + " " + std::to_string(b) + " " + std::to_string(k), diff[k]);
      }
    return R;
  }
};

// Rational coordinates of a residual: (key, label, power) -> value.
std::map<std::tuple<std::string, Label, long>, Rational> coords(const Residual& R, long N) {
  std::map<std::tuple<std::string, Label, long>, Rational> out;
  for (const auto& [key, e] : R)
    for (const auto& [l, c] : e) {
      if (N % c.order() != 0) throw Error("coefficient field Q(zeta_" + std::to_string(c.order()) + ") exceeds the solver field");
      auto red = c.embed(N).reduced();
      for (size_t t = 0; t < red.size(); ++t)
        if (sgn(red[t]) != 0) out[{key, l, static_cast<long>(t)}] = red[t];
    }
  return out;
}

}  // namespace

ChernResult chern_solve(const HoloModule& h, const Hermitian& H, int box, long N) {
  const Calculus& C = *h.C;
  const auto& B = *C.B;
  ChernProblem P{h, H, 0, 0, {}, {}, {}};
  P.n1 = C.rank(1);
  P.rk = h.rank;
  P.one = B.A->unit.begin()->first;
  for (size_t r = 0; r < P.rk; ++r) P.dbar.push_back(dbar_E(h, vunit(B, P.rk, r)));
  for (size_t a = 0; a < P.rk; ++a)
    for (size_t b = 0; b < P.rk; ++b) P.dh.push_back(dform(C, form_of(C, H.h[a][b])).c);

  const auto labels = B.labels(B.finite ? 0 : box);
  const long phiN = euler_phi(N);
  struct Unknown {
    size_t r, ks;
    Label l;
    long t;
  };
  std::vector<Unknown> unk;
  for (size_t r = 0; r < P.rk; ++r)
    for (size_t ks = 0; ks < P.n1 * P.rk; ++ks)
      for (const auto& l : labels)
        for (long t = 0; t < phiN; ++t) unk.push_back({r, ks, l, t});

  std::vector<Vec> X0(P.rk, Vec(P.n1 * P.rk));
  auto R0 = coords(P.eval(X0), N);
  std::map<std::tuple<std::string, Label, long>, SparseRow<Rational>> rows;
  for (size_t j = 0; j < unk.size(); ++j) {
    auto X = X0;
    X[unk[j].r][unk[j].ks] = Elem::basis(unk[j].l, Cyc::root(N, unk[j].t));
    auto Rj = coords(P.eval(X), N);
    for (const auto& [key, v] : Rj) {
      auto it = R0.find(key);
      Rational d = it == R0.end() ? v : v - it->second;
      if (sgn(d) != 0) rows[key][static_cast<int>(j)] = d;
    }
    for (const auto& [key, v] : R0)
      if (!Rj.count(key)) rows[key][static_cast<int>(j)] = -v;
  }
  for (const auto& [key, v] : R0) rows[key];

  LinearSystem<Rational> sys;
  sys.ncols = static_cast<int>(unk.size());
  std::vector<std::string> row_names;
  for (auto& [key, row] : rows) {
    auto it = R0.find(key);
    Rational b = it == R0.end() ? Rational(0) : Rational(-it->second);
    sys.add_row(row, b);
    row_names.push_back(std::get<0>(key) + " @ " + std::get<1>(key).str() + " zeta^" + std::to_string(std::get<2>(key)));
  }
  auto sol = solve_linear(sys);
  if (!sol.consistent)
    throw Error("no Chern connection in search space: inconsistent row " + row_names[sol.inconsistent_row]);
  if (!sol.free_cols.empty()) {
    const auto& u = unk[sol.free_cols.front()];
    throw Error("uniqueness violated in search space: kernel dimension " + std::to_string(sol.free_cols.size()) +
                ", free unknown nabla(e" + std::to_string(u.r) + ")[" + std::to_string(u.ks) + "] at " + u.l.str() + " zeta^" +
                std::to_string(u.t));
  }
  ChernResult out;
  out.conn.C = h.C;
  out.conn.rank = P.rk;
  for (auto i : h.cs.indices(1, 0)) out.conn.basis.push_back(h.cs.names[1][i]);
  out.conn.nabla = X0;
  for (size_t j = 0; j < unk.size(); ++j)
    if (sgn(sol.x[j]) != 0) out.conn.nabla[unk[j].r][unk[j].ks].add(unk[j].l, Cyc(sol.x[j]) * Cyc::root(N, unk[j].t));
  out.unknowns = unk.size();
  out.equations = sys.rows.size();
  out.box = box;
  return out;
}

Report verify_chern(const HoloModule& h, const Hermitian& H, const Connection& c, const SampleSpec& spec) {
  Report r;
  const Calculus& C = *c.C;
  const auto& B = *C.B;
  const size_t n1 = C.rank(1), rk = c.rank;
  const FreeModule E = module_of("E", c.basis);
  sampled(r, spec, "chern_dbar_part", "Chern connection: (pi^{0,1} (x) id) nabla = dbar_E", "elements", 98,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec v = sample_vec(B, rk, spec.box, s);
            Vec nv = connection_apply(c, v);
            Vec proj(h.n01 * rk);
            for (size_t j = 0; j < rk; ++j) {
              Form w = form_zero(C, 1);
              for (size_t k = 0; k < n1; ++k) w.c[k] = nv[k * rk + j];
              Vec p = to_pq(h.cs, w, 0, 1);
              for (size_t u = 0; u < p.size(); ++u) proj[u * rk + j] = p[u];
            }
            if (proj != dbar_E(h, v)) return "e=" + vstr(B, E, v);
            return std::nullopt;
          });
  sampled(r, spec, "chern_compatible",
          "Chern connection: d<x, ybar> = (id (x) < , >)(nabla (x) id) + (< , > (x) id)(id (x) nablatilde)", "pairs", 99,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec x = sample_vec(B, rk, spec.box, s), y = sample_vec(B, rk, spec.box, s);
            Vec z = vbar(B, y);
            Vec lhs = dform(C, form_of(C, herm_pair(H, x, z))).c;
            Vec rhs(n1);
            Vec nx = connection_apply(c, x);
            for (size_t k = 0; k < n1; ++k)
              for (size_t j = 0; j < rk; ++j)
                if (!nx[k * rk + j].is_zero()) rhs[k] += bmult(B, nx[k * rk + j], herm_pair(H, vunit(B, rk, j), z));
            Vec nz = conj_right_connection(c, z);
            for (size_t j = 0; j < rk; ++j)
              for (size_t k = 0; k < n1; ++k)
                if (!nz[j * n1 + k].is_zero()) rhs[k] += bmult(B, herm_pair(H, x, vunit(B, rk, j)), nz[j * n1 + k]);
            if (lhs != rhs) return "x=" + vstr(B, E, x) + " y=" + vstr(B, E, y);
            return std::nullopt;
          });
  r.merge(verify_connection(c, spec), "chern");
  return r;
}

Vec include_second_leg(const Calculus& C, const ComplexStructure& cs, const Vec& y, size_t rank) {
  const size_t n1 = C.rank(1);
  auto idx = cs.indices(1, 0);
  Vec out(n1 * n1);
  for (size_t k = 0; k < n1; ++k)
    for (size_t s = 0; s < rank; ++s) {
      const Elem& c = y[k * rank + s];
      if (c.is_zero()) continue;
      const auto& row = cs.frame[1][idx[s]];
      for (size_t i = 0; i < n1; ++i)
        if (!row[i].is_zero()) out[k * n1 + i] += row[i] * c;
    }
  return out;
}

Report verify_direct_sum(const Connection& lc, const Connection& ch10, const ComplexStructure& cs,
                         const Connection& ch01, const ComplexStructure& opp, const SampleSpec& spec) {
  Report r;
  const Calculus& C = *lc.C;
  const auto& B = *C.B;
  auto check = [&](const Connection& ch, const ComplexStructure& s, const Vec& x) -> std::optional<std::string> {
    Vec lhs = connection_apply(lc, from_pq(C, s, 1, 0, x).c);
    Vec rhs = include_second_leg(C, s, connection_apply(ch, x), ch.rank);
    if (lhs != rhs) {
      auto O = omega1(C);
      return "x=" + vstr(B, FreeModule{"E", ch.basis}, x) + ": nabla(iota x)=" + vstr(B, tensor_of(O, O), lhs) +
             " (id (x) iota) nabla_Ch(x)=" + vstr(B, tensor_of(O, O), rhs);
    }
    return std::nullopt;
  };
  struct Part {
    std::string id;
    const Connection* ch;
    const ComplexStructure* s;
    uint64_t salt;
  };
  for (const Part& p : {Part{"direct_sum_10", &ch10, &cs, 101}, Part{"direct_sum_01", &ch01, &opp, 102}}) {
    run_check(r, p.id + "_basis", "nabla_{Omega^1} = nabla_Ch (+) nabla_Ch on the basis", "basis", [&]() -> std::optional<std::string> {
      for (size_t i = 0; i < p.ch->rank; ++i)
        if (auto w = check(*p.ch, *p.s, vunit(B, p.ch->rank, i))) return w;
      return std::nullopt;
    });
    sampled(r, spec, p.id + "_sampled", "nabla_{Omega^1} = nabla_Ch (+) nabla_Ch on sampled monomial multiples", "monomial multiples",
            p.salt, [&](Sampler& s) -> std::optional<std::string> {
              auto L = B.labels(B.finite ? 0 : spec.box);
              Elem b = Elem::basis(s.pick(L), s.coeff(B.N));
              Vec x = vunit(B, p.ch->rank, s.index(p.ch->rank));
              return check(*p.ch, *p.s, vlmul(B, b, x));
            });
  }
  return r;
}

Report verify_star_object(const Calculus& C, const Calculus& Cg, const TwistContext& t, const SampleSpec& spec) {
  Report r;
  const auto& Bg = *t.Bg;
  const size_t n = C.rank(1);
  sampled(r, spec, "star_object", "star object: star_gamma = N^-1 Gamma(star) on Omega^1", "one-forms", 103,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec w = sample_vec(Bg, n, spec.box, s);
            Vec lhs = vbar(Bg, star_form(Cg, Form{1, w}).c);
            Vec rhs = frak_N_inv(t, vbar(*t.B, star_form(C, Form{1, w}).c));
            if (lhs != rhs) return "w=" + vstr(Bg, omega1(C), w);
            return std::nullopt;
          });
  sampled(r, spec, "star_object_involutive", "star object: conj(star) star = bb", "one-forms", 104,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec w = sample_vec(Bg, n, spec.box, s);
            // star(w) = conj(w^*); conj(star)(conj(star w)) = conj(conj((w^*)^*))
            Vec sw = star_form(Cg, Form{1, w}).c;
            if (star_form(Cg, Form{1, sw}).c != w) return "w=" + vstr(Bg, omega1(C), w);
            return std::nullopt;
          });
  return r;
}

bool same_tables(const Connection& a, const Connection& b) { return a.nabla == b.nabla && a.sigma == b.sigma; }

}  // namespace cotwist
