#include "cotwist/calculus.hpp"

#include <sstream>

#include "cotwist/linalg.hpp"

namespace cotwist {

Form form_zero(const Calculus& C, int k) { return Form{k, Vec(C.rank(k))}; }

Form form_unit(const Calculus& C, int k, size_t i) { return Form{k, vunit(*C.B, C.rank(k), i)}; }

Form form_of(const Calculus&, const Elem& b) { return Form{0, Vec{b}}; }

Form fadd(Form a, const Form& b) {
  if (a.deg != b.deg) throw Error("adding forms of different degree");
  a.c = vadd(std::move(a.c), b.c);
  return a;
}

Form fsub(Form a, const Form& b) {
  if (a.deg != b.deg) throw Error("subtracting forms of different degree");
  a.c = vsub(std::move(a.c), b.c);
  return a;
}

Form fscale(const Cyc& c, Form a) {
  a.c = vscale(c, std::move(a.c));
  return a;
}

bool fis_zero(const Form& a) { return vis_zero(a.c); }

Form flmul(const Calculus& C, const Elem& b, const Form& a) { return Form{a.deg, vlmul(*C.B, b, a.c)}; }

Form frmul(const Calculus& C, const Form& a, const Elem& b) { return Form{a.deg, vrmul(*C.B, a.c, b)}; }

Form wedge(const Calculus& C, const Form& a, const Form& b) {
  const int k = a.deg, l = b.deg;
  if (k == 0) return Form{l, vlmul(*C.B, a.c[0], b.c)};
  if (l == 0) return Form{k, vrmul(*C.B, a.c, b.c[0])};
  Form out = form_zero(C, k + l);
  if (k + l > C.top) return out;
  const auto& tbl = C.wedge.at({k, l});
  const size_t rl = C.rank(l);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j].is_zero()) continue;
      const Vec& w = tbl[i * rl + j];
      if (vis_zero(w)) continue;
      out.c = vadd(std::move(out.c), vlmul(*C.B, bmult(*C.B, a.c[i], b.c[j]), w));
    }
  }
  return out;
}

Form dform(const Calculus& C, const Form& a) {
  if (C.base) return dform(*C.base, a);
  const int k = a.deg;
  Form out = form_zero(C, k + 1);
  if (k + 1 > C.top) return out;
  if (k == 0) {
    for (const auto& [l, c] : a.c[0]) out.c = vadd(std::move(out.c), vscale(c, C.d0(l)));
    return out;
  }
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    out = fadd(std::move(out), wedge(C, dform(C, form_of(C, a.c[i])), form_unit(C, k, i)));
    out.c = vadd(std::move(out.c), vlmul(*C.B, a.c[i], C.dbasis[k][i]));
  }
  return out;
}

Form star_form(const Calculus& C, const Form& a) {
  if (a.deg == 0) return Form{0, Vec{bstar(*C.B, a.c[0])}};
  Form out = form_zero(C, a.deg);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    // (b w)^* = w^* b^*, and basis forms are central
    out.c = vadd(std::move(out.c), vrmul(*C.B, C.star[a.deg][i], bstar(*C.B, a.c[i])));
  }
  return out;
}

std::string form_str(const Calculus& C, const Form& a) {
  FreeModule M{"Omega^" + std::to_string(a.deg), a.deg <= C.top ? C.names[a.deg] : std::vector<std::string>{}};
  return vstr(*C.B, M, a.c);
}

Form sample_form(const Calculus& C, int k, int box, Sampler& s) { return Form{k, sample_vec(*C.B, C.rank(k), box, s)}; }

Form wedge_tensor(const Calculus& C, int k, int l, const Vec& t) {
  Form out = form_zero(C, k + l);
  const size_t rk = C.rank(k), rl = C.rank(l);
  for (size_t i = 0; i < rk; ++i)
    for (size_t j = 0; j < rl; ++j) {
      const Elem& c = t[i * rl + j];
      if (c.is_zero()) continue;
      Form a = form_zero(C, k);
      a.c[i] = c;
      out = fadd(std::move(out), wedge(C, a, form_unit(C, l, j)));
    }
  return out;
}

CalcPtr torus_calculus(ComodPtr B) {
  auto C = std::make_shared<Calculus>();
  C->name = "Omega(T2)";
  C->B = B;
  C->top = 2;
  C->names = {{"1"}, {"w1", "w2"}, {"w1^w2"}};
  auto s = [&](long v) { return Elem::basis(B->unit.begin()->first, Cyc(v)); };
  C->wedge[{1, 1}] = {Vec{Elem()}, Vec{s(1)}, Vec{s(-1)}, Vec{Elem()}};
  C->wedge[{1, 2}] = std::vector<Vec>(2, Vec{});
  C->wedge[{2, 1}] = std::vector<Vec>(2, Vec{});
  C->wedge[{2, 2}] = std::vector<Vec>(1, Vec{});
  C->d0 = [](const Label& l) {
    Vec v(2);
    v[0].add(l, Cyc(static_cast<long>(l[0])));
    v[1].add(l, Cyc(static_cast<long>(l[1])));
    return v;
  };
  C->dbasis = {{Vec(2)}, {Vec(1), Vec(1)}, {Vec{}}};
  C->star = {{Vec{s(1)}}, {Vec{s(-1), Elem()}, Vec{Elem(), s(-1)}}, {Vec{s(1)}}};
  return C;
}

Form wedge_formula(const TwistContext& t, const Calculus& C, const Form& a, const Form& b) {
  Form out = form_zero(C, a.deg + b.deg);
  auto ca = vcoact(*t.B, a.c), cb = vcoact(*t.B, b.c);
  for (const auto& [x, ax] : ca)
    for (const auto& [y, by] : cb) {
      Cyc g = t.c->gamma(x, y);
      if (g.is_zero()) continue;
      out = fadd(std::move(out), fscale(g, wedge(C, Form{a.deg, ax}, Form{b.deg, by})));
    }
  return out;
}

Form star_formula(const TwistContext& t, const Calculus& C, const Form& a) {
  Form out = form_zero(C, a.deg);
  const auto& A = *t.c->A;
  for (const auto& [x, ax] : vcoact(*t.B, a.c)) {
    Cyc v = eval_lin(t.c->Vbar, A.star(x));
    if (!v.is_zero()) out = fadd(std::move(out), fscale(v, star_form(C, Form{a.deg, ax})));
  }
  return out;
}

CalcPtr twist_calculus(CalcPtr C, const TwistContext& t) {
  auto G = std::make_shared<Calculus>(*C);
  G->name = C->name + "_" + t.c->name;
  G->B = t.Bg;
  G->base = C;
  G->cocycle = t.c;
  for (auto& [kl, tbl] : G->wedge) {
    const auto [k, l] = kl;
    if (k + l > C->top) continue;
    for (size_t i = 0; i < C->rank(k); ++i)
      for (size_t j = 0; j < C->rank(l); ++j)
        tbl[i * C->rank(l) + j] = wedge_formula(t, *C, form_unit(*C, k, i), form_unit(*C, l, j)).c;
  }
  for (int k = 1; k <= C->top; ++k)
    for (size_t i = 0; i < C->rank(k); ++i) G->star[k][i] = star_formula(t, *C, form_unit(*C, k, i)).c;
  return G;
}

namespace {

std::string neq(const Calculus& C, const std::string& where, const Form& l, const Form& r) {
  return where + ": lhs=" + form_str(C, l) + " rhs=" + form_str(C, r);
}

std::map<Label, Vec> nonzero(std::map<Label, Vec> m) {
  for (auto it = m.begin(); it != m.end();) {
    if (vis_zero(it->second)) it = m.erase(it);
    else ++it;
  }
  return m;
}

}  // namespace

std::optional<Cyc> scalar_of(const ComoduleAlgebra& B, const Elem& e) {
  if (e.is_zero()) return Cyc();
  const Label& u = B.unit.begin()->first;
  if (e.size() == 1 && e.begin()->first == u) return e.begin()->second / B.unit.begin()->second;
  return std::nullopt;
}

Report verify_calculus(const Calculus& C, const SampleSpec& spec) {
  Report r;
  const auto& B = *C.B;
  const std::string ss = sampled_spec(spec, "forms per degree");
  auto sampled = [&](const std::string& id, const std::string& anchor, uint64_t salt,
                     std::function<std::optional<std::string>(Sampler&)> f) {
    run_check(r, id, anchor, ss, [&]() { return sample_sweep(spec.samples, spec.seed, salt, f); });
  };
  const int top = C.top;
  sampled("d_squared", "differential calculus: d^2 = 0", 21, [&](Sampler& s) -> std::optional<std::string> {
    for (int k = 0; k + 2 <= top; ++k) {
      Form a = sample_form(C, k, spec.box, s);
      Form dd = dform(C, dform(C, a));
      if (!fis_zero(dd)) return "a=" + form_str(C, a) + ": d^2 a=" + form_str(C, dd);
    }
    return std::nullopt;
  });
  sampled("graded_leibniz", "differential calculus: d(a ^ b) = da ^ b + (-1)^k a ^ db", 22,
          [&](Sampler& s) -> std::optional<std::string> {
            for (int k = 0; k <= top; ++k)
              for (int l = 0; k + l <= top; ++l) {
                Form a = sample_form(C, k, spec.box, s), b = sample_form(C, l, spec.box, s);
                Form lhs = dform(C, wedge(C, a, b));
                Form rhs = wedge(C, dform(C, a), b);
                Form t = wedge(C, a, dform(C, b));
                rhs = k % 2 ? fsub(rhs, t) : fadd(rhs, t);
                if (lhs.c != rhs.c) return neq(C, "a=" + form_str(C, a) + " b=" + form_str(C, b), lhs, rhs);
              }
            return std::nullopt;
          });
  sampled("wedge_associative", "differential graded algebra: wedge is associative", 23,
          [&](Sampler& s) -> std::optional<std::string> {
            for (int k = 0; k <= top; ++k)
              for (int l = 0; k + l <= top; ++l)
                for (int m = 0; k + l + m <= top; ++m) {
                  Form a = sample_form(C, k, spec.box, s), b = sample_form(C, l, spec.box, s),
                       c = sample_form(C, m, spec.box, s);
                  Form lhs = wedge(C, wedge(C, a, b), c), rhs = wedge(C, a, wedge(C, b, c));
                  if (lhs.c != rhs.c) return neq(C, "degrees " + std::to_string(k) + std::to_string(l) + std::to_string(m), lhs, rhs);
                }
            return std::nullopt;
          });
  sampled("star_involution", "*-calculus: * is an involution", 24, [&](Sampler& s) -> std::optional<std::string> {
    for (int k = 0; k <= top; ++k) {
      Form a = sample_form(C, k, spec.box, s);
      Form b = star_form(C, star_form(C, a));
      if (a.c != b.c) return neq(C, "a**", b, a);
    }
    return std::nullopt;
  });
  sampled("star_d", "*-calculus: d(w^*) = (dw)^*", 25, [&](Sampler& s) -> std::optional<std::string> {
    for (int k = 0; k < top; ++k) {
      Form a = sample_form(C, k, spec.box, s);
      Form lhs = dform(C, star_form(C, a)), rhs = star_form(C, dform(C, a));
      if (lhs.c != rhs.c) return neq(C, "a=" + form_str(C, a), lhs, rhs);
    }
    return std::nullopt;
  });
  sampled("star_wedge", "*-calculus: (w ^ h)^* = (-1)^{kl} h^* ^ w^*", 26, [&](Sampler& s) -> std::optional<std::string> {
    for (int k = 0; k <= top; ++k)
      for (int l = 0; k + l <= top; ++l) {
        Form a = sample_form(C, k, spec.box, s), b = sample_form(C, l, spec.box, s);
        Form lhs = star_form(C, wedge(C, a, b));
        Form rhs = wedge(C, star_form(C, b), star_form(C, a));
        if ((k * l) % 2) rhs = fscale(Cyc(-1), rhs);
        if (lhs.c != rhs.c) return neq(C, "a=" + form_str(C, a) + " b=" + form_str(C, b), lhs, rhs);
      }
    return std::nullopt;
  });
  sampled("d_covariant", "covariant calculus: d is a comodule map", 27, [&](Sampler& s) -> std::optional<std::string> {
    for (int k = 0; k < top; ++k) {
      Form a = sample_form(C, k, spec.box, s);
      auto lhs = nonzero(vcoact(B, dform(C, a).c));
      std::map<Label, Vec> rhs;
      for (const auto& [x, ax] : vcoact(B, a.c)) rhs[x] = dform(C, Form{k, ax}).c;
      if (lhs != nonzero(rhs)) return "coaction of d mismatched at a=" + form_str(C, a);
    }
    return std::nullopt;
  });
  sampled("wedge_covariant", "covariant calculus: wedge is a comodule map", 28, [&](Sampler& s) -> std::optional<std::string> {
    const auto& A = *B.A;
    for (int k = 0; k <= top; ++k)
      for (int l = 0; k + l <= top; ++l) {
        Form a = sample_form(C, k, spec.box, s), b = sample_form(C, l, spec.box, s);
        auto lhs = nonzero(vcoact(B, wedge(C, a, b).c));
        std::map<Label, Vec> rhs;
        for (const auto& [x, ax] : vcoact(B, a.c))
          for (const auto& [y, by] : vcoact(B, b.c)) {
            Vec w = wedge(C, Form{k, ax}, Form{l, by}).c;
            for (const auto& [z, cz] : A.mult(x, y)) {
              auto& slot = rhs[z];
              if (slot.empty()) slot.resize(w.size());
              slot = vadd(std::move(slot), vscale(cz, w));
            }
          }
        if (lhs != nonzero(rhs)) return "coaction of wedge mismatched at degrees " + std::to_string(k) + "," + std::to_string(l);
      }
    return std::nullopt;
  });
  run_check(r, "generated", "covariant calculus: generated by B and dB", "generators and basis", [&]() -> std::optional<std::string> {
    // b^* db over generators must span Omega^1 with scalar coefficients,
    // and wedges of one-forms must span the higher degrees.
    std::vector<std::vector<Cyc>> rows;
    for (const auto& [name, g] : B.generators) {
      Elem gs = B.star(g);
      Form f = flmul(C, gs, dform(C, form_of(C, Elem::basis(g))));
      std::vector<Cyc> row;
      for (const auto& e : f.c) {
        auto sc = scalar_of(B, e);
        if (!sc) return "g^* dg is not a constant-coefficient form for g=" + name + ": " + form_str(C, f);
        row.push_back(*sc);
      }
      rows.push_back(row);
    }
    auto rank_of = [](const std::vector<std::vector<Cyc>>& m, size_t ncols) {
      LinearSystem<Cyc> sys;
      sys.ncols = static_cast<int>(ncols);
      for (const auto& row : m) {
        SparseRow<Cyc> sr;
        for (size_t j = 0; j < row.size(); ++j)
          if (!row[j].is_zero()) sr[static_cast<int>(j)] = row[j];
        sys.add_row(sr, Cyc());
      }
      return static_cast<size_t>(solve_linear(sys).rank);
    };
    if (rank_of(rows, C.rank(1)) != C.rank(1)) return std::string("B dB does not span Omega^1");
    for (int k = 2; k <= top; ++k) {
      std::vector<std::vector<Cyc>> m;
      for (size_t i = 0; i < C.rank(1); ++i)
        for (size_t j = 0; j < C.rank(k - 1); ++j) {
          Form w = wedge(C, form_unit(C, 1, i), form_unit(C, k - 1, j));
          std::vector<Cyc> row;
          for (const auto& e : w.c) {
            auto sc = scalar_of(B, e);
            if (!sc) return "non-constant wedge of basis forms in degree " + std::to_string(k);
            row.push_back(*sc);
          }
          m.push_back(row);
        }
      if (rank_of(m, C.rank(k)) != C.rank(k)) return "wedges do not span Omega^" + std::to_string(k);
    }
    return std::nullopt;
  });
  return r;
}

Report verify_twisted_formulas(const TwistContext& t, const Calculus& C, const Calculus& Cg, const SampleSpec& spec) {
  Report r;
  const std::string ss = sampled_spec(spec, "form pairs");
  run_check(r, "wedge_formula", "twisted wedge w ^_g h = gamma(w_-1, h_-1) w_0 ^ h_0", ss, [&]() {
    return sample_sweep(spec.samples, spec.seed, 31, [&](Sampler& s) -> std::optional<std::string> {
      for (int k = 0; k <= C.top; ++k)
        for (int l = 0; k + l <= C.top; ++l) {
          Form a = sample_form(C, k, spec.box, s), b = sample_form(C, l, spec.box, s);
          Form lhs = wedge(Cg, a, b), rhs = wedge_formula(t, C, a, b);
          if (lhs.c != rhs.c) return neq(Cg, "a=" + form_str(C, a) + " b=" + form_str(C, b), lhs, rhs);
        }
      return std::nullopt;
    });
  });
  run_check(r, "star_formula", "twisted star w^{*g} = Vbar(w_-1^*) w_0^*", ss, [&]() {
    return sample_sweep(spec.samples, spec.seed, 32, [&](Sampler& s) -> std::optional<std::string> {
      for (int k = 0; k <= C.top; ++k) {
        Form a = sample_form(C, k, spec.box, s);
        Form lhs = star_form(Cg, a), rhs = star_formula(t, C, a);
        if (lhs.c != rhs.c) return neq(Cg, "a=" + form_str(C, a), lhs, rhs);
      }
      return std::nullopt;
    });
  });
  return r;
}

std::vector<size_t> ComplexStructure::indices(int p, int q) const {
  std::vector<size_t> out;
  const int k = p + q;
  if (k < 0 || k >= static_cast<int>(bigrade.size())) return out;
  for (size_t r = 0; r < bigrade[k].size(); ++r)
    if (bigrade[k][r] == std::make_pair(p, q)) out.push_back(r);
  return out;
}

ComplexStructure make_complex_structure(std::vector<std::vector<std::vector<Cyc>>> frame,
                                        std::vector<std::vector<std::pair<int, int>>> bigrade,
                                        std::vector<std::vector<std::string>> names) {
  ComplexStructure cs;
  for (size_t k = 0; k < frame.size(); ++k) {
    auto inv = invert_matrix(frame[k]);
    if (!inv) throw Error("complex structure frame in degree " + std::to_string(k) + " is singular");
    cs.frame_inv.push_back(*inv);
  }
  cs.frame = std::move(frame);
  cs.bigrade = std::move(bigrade);
  cs.names = std::move(names);
  return cs;
}

ComplexStructure opposite_structure(const ComplexStructure& cs) {
  ComplexStructure o = cs;
  for (auto& deg : o.bigrade)
    for (auto& pq : deg) std::swap(pq.first, pq.second);
  o.opposite = !cs.opposite;
  return o;
}

Vec to_pq(const ComplexStructure& cs, const Form& a, int p, int q) {
  if (a.deg != p + q) throw Error("bidegree does not match form degree");
  auto idx = cs.indices(p, q);
  Vec out(idx.size());
  const auto& inv = cs.frame_inv[a.deg];
  for (size_t n = 0; n < idx.size(); ++n)
    for (size_t i = 0; i < a.c.size(); ++i) {
      const Cyc& f = inv[i][idx[n]];
      if (!f.is_zero() && !a.c[i].is_zero()) out[n] += f * a.c[i];
    }
  return out;
}

Form from_pq(const Calculus& C, const ComplexStructure& cs, int p, int q, const Vec& x) {
  auto idx = cs.indices(p, q);
  Form out = form_zero(C, p + q);
  for (size_t n = 0; n < idx.size(); ++n) {
    if (x[n].is_zero()) continue;
    const auto& row = cs.frame[p + q][idx[n]];
    for (size_t i = 0; i < row.size(); ++i)
      if (!row[i].is_zero()) out.c[i] += row[i] * x[n];
  }
  return out;
}

Form project(const Calculus& C, const ComplexStructure& cs, const Form& a, int p, int q) {
  if (p < 0 || q < 0 || p + q != a.deg || a.deg > C.top) return form_zero(C, p + q);
  return from_pq(C, cs, p, q, to_pq(cs, a, p, q));
}

ComplexStructure torus_complex_structure(long N) {
  if (N % 4 != 0) throw Error("complex structure needs 4 | N");
  Cyc i = Cyc::root(N, N / 4);
  return make_complex_structure({{{Cyc(1)}}, {{Cyc(1), i}, {Cyc(1), -i}}, {{Cyc(1)}}},
                                {{{0, 0}}, {{1, 0}, {0, 1}}, {{1, 1}}},
                                {{"1"}, {"w+", "w-"}, {"w1^w2"}});
}

namespace {

Form del_part(const Calculus& C, const ComplexStructure& cs, const Form& a, bool bar) {
  Form out = form_zero(C, a.deg + 1);
  for (int p = 0; p <= a.deg; ++p) {
    int q = a.deg - p;
    Form part = project(C, cs, a, p, q);
    if (fis_zero(part)) continue;
    Form d = dform(C, part);
    out = fadd(std::move(out), bar ? project(C, cs, d, p, q + 1) : project(C, cs, d, p + 1, q));
  }
  return out;
}

}  // namespace

Report verify_complex_structure(const Calculus& C, const ComplexStructure& cs, const SampleSpec& spec) {
  Report r;
  const std::string ss = sampled_spec(spec, "homogeneous forms");
  run_check(r, "direct_sum", "complex structure: Omega^k is the direct sum of the Omega^(p,q)", "frames per degree",
            [&]() -> std::optional<std::string> {
              for (int k = 0; k <= C.top; ++k)
                if (cs.frame[k].size() != C.rank(k)) return "frame of degree " + std::to_string(k) + " has wrong size";
              return std::nullopt;
            });
  auto sampled = [&](const std::string& id, const std::string& anchor, uint64_t salt,
                     std::function<std::optional<std::string>(Sampler&)> f) {
    run_check(r, id, anchor, ss, [&]() { return sample_sweep(spec.samples, spec.seed, salt, f); });
  };
  sampled("projections", "complex structure: projections are complete and idempotent", 41,
          [&](Sampler& s) -> std::optional<std::string> {
            for (int k = 0; k <= C.top; ++k) {
              Form a = sample_form(C, k, spec.box, s);
              Form sum = form_zero(C, k);
              for (int p = 0; p <= k; ++p) {
                Form pa = project(C, cs, a, p, k - p);
                if (project(C, cs, pa, p, k - p).c != pa.c) return "projection not idempotent at a=" + form_str(C, a);
                sum = fadd(std::move(sum), pa);
              }
              if (sum.c != a.c) return neq(C, "sum of projections", sum, a);
            }
            return std::nullopt;
          });
  sampled("star_swaps_bidegree", "complex structure: (Omega^(p,q))^* = Omega^(q,p)", 42,
          [&](Sampler& s) -> std::optional<std::string> {
            for (int k = 0; k <= C.top; ++k)
              for (int p = 0; p <= k; ++p) {
                int q = k - p;
                Form a = project(C, cs, sample_form(C, k, spec.box, s), p, q);
                Form sa = star_form(C, a);
                Form back = project(C, cs, sa, q, p);
                if (back.c != sa.c) return neq(C, "star of a (" + std::to_string(p) + "," + std::to_string(q) + ") form", sa, back);
              }
            return std::nullopt;
          });
  sampled("d_bidegree", "complex structure: d(Omega^(p,q)) in Omega^(p+1,q) + Omega^(p,q+1)", 43,
          [&](Sampler& s) -> std::optional<std::string> {
            for (int k = 0; k < C.top; ++k)
              for (int p = 0; p <= k; ++p) {
                int q = k - p;
                Form a = project(C, cs, sample_form(C, k, spec.box, s), p, q);
                Form da = dform(C, a);
                Form parts = fadd(project(C, cs, da, p + 1, q), project(C, cs, da, p, q + 1));
                if (parts.c != da.c) return neq(C, "d of a (" + std::to_string(p) + "," + std::to_string(q) + ") form", da, parts);
              }
            return std::nullopt;
          });
  sampled("wedge_bidegree", "complex structure: wedge respects the bigrading", 44,
          [&](Sampler& s) -> std::optional<std::string> {
            for (int k = 1; k <= C.top; ++k)
              for (int l = 1; k + l <= C.top; ++l)
                for (int p = 0; p <= k; ++p)
                  for (int p2 = 0; p2 <= l; ++p2) {
                    Form a = project(C, cs, sample_form(C, k, spec.box, s), p, k - p);
                    Form b = project(C, cs, sample_form(C, l, spec.box, s), p2, l - p2);
                    Form w = wedge(C, a, b);
                    Form pw = project(C, cs, w, p + p2, k + l - p - p2);
                    if (pw.c != w.c) return neq(C, "wedge of homogeneous forms", w, pw);
                  }
            return std::nullopt;
          });
  sampled("del_relations", "complex structure: del^2 = 0, delbar^2 = 0, del delbar + delbar del = 0", 45,
          [&](Sampler& s) -> std::optional<std::string> {
            for (int k = 0; k + 2 <= C.top; ++k) {
              Form a = sample_form(C, k, spec.box, s);
              Form dd = del_part(C, cs, del_part(C, cs, a, false), false);
              Form bb = del_part(C, cs, del_part(C, cs, a, true), true);
              Form mix = fadd(del_part(C, cs, del_part(C, cs, a, true), false), del_part(C, cs, del_part(C, cs, a, false), true));
              if (!fis_zero(dd)) return "del^2 a = " + form_str(C, dd);
              if (!fis_zero(bb)) return "delbar^2 a = " + form_str(C, bb);
              if (!fis_zero(mix)) return "del delbar + delbar del = " + form_str(C, mix);
            }
            return std::nullopt;
          });
  sampled("projection_covariant", "covariant complex structure: projections are comodule maps", 46,
          [&](Sampler& s) -> std::optional<std::string> {
            for (int k = 0; k <= C.top; ++k)
              for (int p = 0; p <= k; ++p) {
                Form a = sample_form(C, k, spec.box, s);
                auto lhs = nonzero(vcoact(*C.B, project(C, cs, a, p, k - p).c));
                std::map<Label, Vec> rhs;
                for (const auto& [x, ax] : vcoact(*C.B, a.c)) rhs[x] = project(C, cs, Form{k, ax}, p, k - p).c;
                if (lhs != nonzero(rhs)) return "projection coaction mismatch at a=" + form_str(C, a);
              }
            return std::nullopt;
          });
  return r;
}

Factorization factorization_inverse(const Calculus& C, const ComplexStructure& cs) {
  Factorization f;
  auto i01 = cs.indices(0, 1), i10 = cs.indices(1, 0), i11 = cs.indices(1, 1);
  f.n01 = i01.size();
  f.n10 = i10.size();
  f.n11 = i11.size();
  const size_t np = f.n01 * f.n10;
  // M[(s,t)][u]: (1,1)-coordinates of f_s ^ f_t
  std::vector<std::vector<Cyc>> M(np, std::vector<Cyc>(f.n11));
  for (size_t s = 0; s < f.n01; ++s)
    for (size_t t = 0; t < f.n10; ++t) {
      Vec es(f.n01), et(f.n10);
      es[s] = C.B->unit;
      et[t] = C.B->unit;
      Form w = wedge(C, from_pq(C, cs, 0, 1, es), from_pq(C, cs, 1, 0, et));
      Vec x = to_pq(cs, w, 1, 1);
      for (size_t u = 0; u < f.n11; ++u) {
        auto sc = scalar_of(*C.B, x[u]);
        if (!sc) throw Error("not factorizable: wedge of frame forms has non-constant coefficients");
        M[s * f.n10 + t][u] = *sc;
      }
    }
  if (np != f.n11) throw Error("not factorizable: dim (0,1)(x)(1,0) = " + std::to_string(np) + " but dim (1,1) = " + std::to_string(f.n11));
  // unknowns theta[u][st]; equations sum_st theta[u][st] M[st][v] = delta_uv
  LinearSystem<Cyc> sys;
  sys.ncols = static_cast<int>(f.n11 * np);
  for (size_t u = 0; u < f.n11; ++u)
    for (size_t v = 0; v < f.n11; ++v) {
      SparseRow<Cyc> row;
      for (size_t st = 0; st < np; ++st)
        if (!M[st][v].is_zero()) row[static_cast<int>(u * np + st)] = M[st][v];
      sys.add_row(std::move(row), u == v ? Cyc(1) : Cyc());
    }
  auto sol = solve_linear(sys);
  if (!sol.consistent || !sol.free_cols.empty())
    throw Error("not factorizable: wedge (0,1) (x) (1,0) -> (1,1) is singular");
  for (size_t u = 0; u < f.n11; ++u) {
    Vec th(np);
    for (size_t st = 0; st < np; ++st)
      if (!sol.x[u * np + st].is_zero()) th[st] = sol.x[u * np + st] * C.B->unit;
    f.theta.push_back(th);
  }
  // theta is also a right inverse: theta(wedge(e_st)) = e_st
  for (size_t st = 0; st < np; ++st)
    for (size_t st2 = 0; st2 < np; ++st2) {
      Cyc v;
      for (size_t u = 0; u < f.n11; ++u) {
        auto c = scalar_of(*C.B, f.theta[u][st2]);
        v += M[st][u] * *c;
      }
      if (v != (st == st2 ? Cyc(1) : Cyc())) throw Error("not factorizable: theta is not a two-sided inverse");
    }
  return f;
}

Vec apply_theta(const Calculus& C, const Factorization& f, const Vec& x11) {
  Vec out(f.n01 * f.n10);
  for (size_t u = 0; u < f.n11; ++u)
    if (!x11[u].is_zero()) out = vadd(std::move(out), vlmul(*C.B, x11[u], f.theta[u]));
  return out;
}

HoloPtr holomorphic_from_factorizable(CalcPtr C, const ComplexStructure& cs) {
  auto h = std::make_shared<HoloModule>();
  h->C = C;
  h->cs = cs;
  h->fac = factorization_inverse(*C, cs);
  h->rank = h->fac.n10;
  h->n01 = h->fac.n01;
  return h;
}

HoloPtr twist_holomorphic(HoloPtr h, CalcPtr Cg, const TwistContext& t) {
  auto g = std::make_shared<HoloModule>(*h);
  g->C = Cg;
  g->fac = factorization_inverse(*Cg, h->cs);
  g->base = h;
  g->twist = t;
  return g;
}

Vec dbar_B(const Calculus& C, const ComplexStructure& cs, const Elem& b) {
  return to_pq(cs, dform(C, form_of(C, b)), 0, 1);
}

Vec dbar_E(const HoloModule& h, const Vec& v) {
  if (h.base) return phi_inv_nf(*h.twist, dbar_E(*h.base, v), h.n01, h.rank);
  Form dv = dform(*h.C, from_pq(*h.C, h.cs, 1, 0, v));
  return apply_theta(*h.C, h.fac, to_pq(h.cs, dv, 1, 1));
}

Vec hol_operator(const HoloModule& h, const Vec& t) {
  const Calculus& C = *h.C;
  const size_t n02 = h.cs.indices(0, 2).size();
  Vec out(n02 * h.rank);
  if (n02 == 0) return out;
  for (size_t s = 0; s < h.n01; ++s)
    for (size_t r = 0; r < h.rank; ++r) {
      const Elem& c = t[s * h.rank + r];
      if (c.is_zero()) continue;
      Vec x(h.n01);
      x[s] = c;
      Form w = from_pq(C, h.cs, 0, 1, x);
      Vec first = to_pq(h.cs, project(C, h.cs, dform(C, w), 0, 2), 0, 2);
      out = vadd(std::move(out), vtensor(*C.B, first, vunit(*C.B, h.rank, r)));
      Vec de = dbar_E(h, vunit(*C.B, h.rank, r));
      for (size_t s2 = 0; s2 < h.n01; ++s2)
        for (size_t r2 = 0; r2 < h.rank; ++r2) {
          const Elem& k = de[s2 * h.rank + r2];
          if (k.is_zero()) continue;
          Vec y(h.n01);
          y[s2] = k;
          Vec ww = to_pq(h.cs, wedge(C, w, from_pq(C, h.cs, 0, 1, y)), 0, 2);
          out = vsub(std::move(out), vtensor(*C.B, ww, vunit(*C.B, h.rank, r2)));
        }
    }
  return out;
}

Report verify_holomorphic(const HoloModule& h, const SampleSpec& spec) {
  Report r;
  const Calculus& C = *h.C;
  const auto& B = *C.B;
  FreeModule E{"E", {}};
  for (size_t i = 0; i < h.rank; ++i) E.basis.push_back("e" + std::to_string(i));
  const std::string ss = sampled_spec(spec, "(b, v)");
  run_check(r, "dbar_leibniz", "holomorphic structure: dbar_E(b v) = b dbar_E(v) + dbar(b) (x) v", ss, [&]() {
    return sample_sweep(spec.samples, spec.seed, 51, [&](Sampler& s) -> std::optional<std::string> {
      Elem b = sample_belem(B, spec.box, s, 2);
      Vec v = sample_vec(B, h.rank, spec.box, s);
      Vec lhs = dbar_E(h, vlmul(B, b, v));
      Vec rhs = vadd(vlmul(B, b, dbar_E(h, v)), vtensor(B, dbar_B(C, h.cs, b), v));
      if (lhs != rhs) return "b=" + belem_str(B, b) + " v=" + vstr(B, E, v);
      return std::nullopt;
    });
  });
  run_check(r, "holomorphic_curvature", "holomorphic structure: R^Hol = (dbar (x) id - id ^ dbar_E) dbar_E = 0", ss, [&]() -> std::optional<std::string> {
    for (size_t i = 0; i < h.rank; ++i) {
      Vec R = hol_operator(h, dbar_E(h, vunit(B, h.rank, i)));
      if (!vis_zero(R)) return "R^Hol(e" + std::to_string(i) + ") != 0";
    }
    return sample_sweep(spec.samples, spec.seed, 52, [&](Sampler& s) -> std::optional<std::string> {
      Vec v = sample_vec(B, h.rank, spec.box, s);
      if (!vis_zero(hol_operator(h, dbar_E(h, v)))) return "R^Hol(v) != 0 at v=" + vstr(B, E, v);
      return std::nullopt;
    });
  });
  run_check(r, "dbar_covariant", "covariant holomorphic structure: dbar_E is a comodule map", ss, [&]() {
    return sample_sweep(spec.samples, spec.seed, 53, [&](Sampler& s) -> std::optional<std::string> {
      Vec v = sample_vec(B, h.rank, spec.box, s);
      auto lhs = nonzero(vcoact(B, dbar_E(h, v)));
      std::map<Label, Vec> rhs;
      for (const auto& [x, vx] : vcoact(B, v)) rhs[x] = dbar_E(h, vx);
      if (lhs != nonzero(rhs)) return "coaction mismatch at v=" + vstr(B, E, v);
      return std::nullopt;
    });
  });
  return r;
}

Report verify_holomorphic_transport(const HoloModule& h, const HoloModule& hg, const SampleSpec& spec) {
  Report r;
  const auto& t = *hg.twist;
  const size_t n02 = h.cs.indices(0, 2).size();
  run_check(r, "curvature_transport",
            "twisted holomorphic structure: phi (dbar_g (x) id - id ^_g dbar_GE) phi^-1 = Gamma(dbar (x) id - id ^ dbar_E)",
            sampled_spec(spec, "(w, e)"), [&]() {
              return sample_sweep(spec.samples, spec.seed, 54, [&](Sampler& s) -> std::optional<std::string> {
                Vec w = sample_vec(*t.B, h.n01, spec.box, s);
                Vec e = sample_vec(*t.B, h.rank, spec.box, s);
                Vec lhs = phi_nf(t, hol_operator(hg, phi_inv_pure(t, w, e)), n02, h.rank);
                Vec rhs = hol_operator(h, vtensor(*t.B, w, e));
                if (lhs != rhs) return std::string("mismatch at sampled w (x) e");
                return std::nullopt;
              });
            });
  return r;
}

std::vector<std::vector<Cyc>> complex_operator(const ComplexStructure& cs) {
  const auto& F = cs.frame[1];
  const auto& Fi = cs.frame_inv[1];
  const size_t n = F.size();
  Cyc i = Cyc::root(4, 1);
  std::vector<std::vector<Cyc>> M(n, std::vector<Cyc>(n));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      for (size_t r = 0; r < n; ++r) {
        auto pq = cs.bigrade[1][r];
        Cyc lam = pq == std::make_pair(1, 0) ? i : -i;
        M[a][b] += Fi[a][r] * lam * F[r][b];
      }
  return M;
}

Form fundamental_form(const Calculus& C, const ComplexStructure& cs, const std::vector<std::vector<Cyc>>& gram) {
  auto Ginv = invert_matrix(gram);
  if (!Ginv) throw Error("metric Gram matrix is singular");
  auto I = complex_operator(cs);
  auto Iinv = invert_matrix(I);
  if (!Iinv) throw Error("complex operator is singular");
  const size_t n = C.rank(1);
  Form kappa = form_zero(C, 2);
  for (size_t i = 0; i < n; ++i) {
    // V^-1 of the i-th dual vector, then I^-1 (row-vector convention)
    std::vector<Cyc> v = (*Ginv)[i];
    Form a = form_zero(C, 1);
    for (size_t b = 0; b < n; ++b) {
      Cyc x;
      for (size_t j = 0; j < n; ++j) x += v[j] * (*Iinv)[j][b];
      if (!x.is_zero()) a.c[b] = x * C.B->unit;
    }
    kappa = fadd(std::move(kappa), wedge(C, a, form_unit(C, 1, i)));
  }
  return kappa;
}

Report kahler_checks(const Calculus& C, const ComplexStructure& cs, const Form& kappa, const SampleSpec& spec) {
  Report r;
  const auto& B = *C.B;
  run_check(r, "kappa_central", "Hermitian form: kappa is central", sampled_spec(spec, "forms"), [&]() {
    return sample_sweep(spec.samples, spec.seed, 61, [&](Sampler& s) -> std::optional<std::string> {
      for (int k = 0; k <= C.top; ++k) {
        Form a = sample_form(C, k, spec.box, s);
        Form l = wedge(C, kappa, a), rr = wedge(C, a, kappa);
        if (l.c != rr.c) return neq(C, "a=" + form_str(C, a), l, rr);
      }
      return std::nullopt;
    });
  });
  run_check(r, "kappa_real", "Hermitian form: kappa^* = kappa", "kappa", [&]() -> std::optional<std::string> {
    Form sk = star_form(C, kappa);
    if (sk.c != kappa.c) return neq(C, "kappa^*", sk, kappa);
    return std::nullopt;
  });
  run_check(r, "kappa_coinvariant", "Hermitian form: kappa is coinvariant", "kappa", [&]() -> std::optional<std::string> {
    auto co = nonzero(vcoact(B, kappa.c));
    const Label& one = B.A->unit.begin()->first;
    if (co.size() != 1 || co.begin()->first != one || co.begin()->second != kappa.c)
      return "kappa is not coinvariant: " + form_str(C, kappa);
    return std::nullopt;
  });
  run_check(r, "kappa_type", "Hermitian form: kappa in Omega^(1,1)", "kappa", [&]() -> std::optional<std::string> {
    Form p = project(C, cs, kappa, 1, 1);
    if (p.c != kappa.c) return neq(C, "pi^{1,1} kappa", p, kappa);
    return std::nullopt;
  });
  run_check(r, "kappa_closed", "Kahler form: d kappa = 0", "kappa", [&]() -> std::optional<std::string> {
    Form dk = dform(C, kappa);
    if (!fis_zero(dk)) return "d kappa = " + form_str(C, dk);
    return std::nullopt;
  });
  run_check(r, "lefschetz", "Hermitian form: L^{n-k}: Omega^k -> Omega^{2n-k} is bijective for k < n", "basis",
            [&]() -> std::optional<std::string> {
              const int n = C.top / 2;
              for (int k = 0; k < n; ++k) {
                Form kp = form_unit(C, 0, 0);
                for (int j = 0; j < n - k; ++j) kp = wedge(C, kp, kappa);
                const size_t rk = C.rank(k), rt = C.rank(2 * n - k);
                if (rk != rt) return "rank mismatch in degree " + std::to_string(k);
                std::vector<std::vector<Cyc>> M;
                for (size_t i = 0; i < rk; ++i) {
                  Form w = wedge(C, form_unit(C, k, i), kp);
                  std::vector<Cyc> row;
                  for (const auto& e : w.c) {
                    auto sc = scalar_of(B, e);
                    if (!sc) return std::string("Lefschetz map has non-constant coefficients");
                    row.push_back(*sc);
                  }
                  M.push_back(row);
                }
                if (!invert_matrix(M)) return "L^" + std::to_string(n - k) + " is singular on Omega^" + std::to_string(k);
              }
              return std::nullopt;
            });
  return r;
}

}  // namespace cotwist
