#include "cotwist/relhopf.hpp"

#include <numeric>
#include <sstream>

namespace cotwist {

Elem bmult(const ComoduleAlgebra& B, const Elem& a, const Elem& b) {
  Elem out;
  for (const auto& [la, ca] : a)
    for (const auto& [lb, cb] : b) out += (ca * cb) * B.mult(la, lb);
  return out;
}

Elem bstar(const ComoduleAlgebra& B, const Elem& a) {
  Elem out;
  for (const auto& [l, c] : a) out += c.conj() * B.star(l);
  return out;
}

Tensor bcoact(const ComoduleAlgebra& B, const Elem& a) {
  Tensor out(2);
  for (const auto& [l, c] : a)
    for (const auto& [k, d] : B.coaction(l)) out.add(k, c * d);
  return out;
}

std::map<Label, Elem> coact_split(const ComoduleAlgebra& B, const Elem& a) {
  std::map<Label, Elem> out;
  for (const auto& [k, c] : bcoact(B, a)) out[k[0]].add(k[1], c);
  return out;
}

std::string monomial_str(const ComoduleAlgebra& B, const Label& l) {
  if (B.symbol != "xy") return B.symbol + l.str();
  std::string s;
  auto part = [&](const char* v, int e) {
    if (e == 0) return;
    if (!s.empty()) s += "*";
    s += v;
    if (e != 1) s += "^" + std::to_string(e);
  };
  part("x", l[0]);
  part("y", l[1]);
  return s.empty() ? "1" : s;
}

std::string belem_str(const ComoduleAlgebra& B, const Elem& e) {
  if (e.is_zero()) return "0";
  std::string s;
  for (const auto& [l, c] : e) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")*" + monomial_str(B, l);
  }
  return s;
}

ComodPtr torus_algebra() {
  auto A = group_algebra({0, 0});
  auto B = std::make_shared<ComoduleAlgebra>();
  B->name = "O(T2)";
  B->A = A;
  B->contains = [](const Label& l) { return l.size() == 2; };
  B->mult = [](const Label& a, const Label& b) { return Elem::basis(Label{a[0] + b[0], a[1] + b[1]}); };
  B->unit = Elem::basis(Label{0, 0});
  B->star = [](const Label& a) { return Elem::basis(Label{-a[0], -a[1]}); };
  B->coaction = [](const Label& a) {
    Tensor t(2);
    t.add({a, a}, Cyc(1));
    return t;
  };
  B->labels = A->labels;
  B->generators = {{"x", Label{1, 0}}, {"y", Label{0, 1}}};
  B->symbol = "xy";
  return B;
}

ComodPtr regular_comodule(HopfPtr A) {
  auto B = std::make_shared<ComoduleAlgebra>();
  B->name = A->name;
  B->A = A;
  B->contains = A->contains;
  B->mult = A->mult;
  B->unit = A->unit;
  B->star = A->star;
  B->coaction = A->coproduct;
  B->labels = A->labels;
  B->finite = A->finite;
  B->symbol = A->symbol;
  return B;
}

ComodPtr twist_comodule_algebra(ComodPtr B, const TwistedHopf& t) {
  auto c = t.cocycle;
  auto Bg = std::make_shared<ComoduleAlgebra>(*B);
  Bg->name = B->name + "_" + c->name;
  Bg->A = t.twisted;
  Bg->mult = [B, c](const Label& a, const Label& b) {
    Elem out;
    for (const auto& [ka, ca] : B->coaction(a))
      for (const auto& [kb, cb] : B->coaction(b)) {
        Cyc w = ca * cb * c->gamma(ka[0], kb[0]);
        if (!w.is_zero()) out += w * B->mult(ka[1], kb[1]);
      }
    return out;
  };
  Bg->star = [B, c](const Label& a) {
    if (!c->unitary) throw Error("missing unitarity: the twisted star requires a unitary cocycle");
    Elem out;
    const auto& A = *c->A;
    for (const auto& [k, x] : B->coaction(a)) {
      Cyc w = x.conj() * eval_lin(c->Vbar, A.star(k[0]));
      if (!w.is_zero()) out += w * B->star(k[1]);
    }
    return out;
  };
  Bg->cocycle = c;
  Bg->base = B;
  Bg->N = std::lcm(B->N, c->N);
  return Bg;
}

namespace {

std::string neq(const std::string& where, const std::string& l, const std::string& r) {
  return where + ": lhs=" + l + " rhs=" + r;
}

std::string tuple_str(const LabelTuple& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) s += (i ? ", " : "") + t[i].str();
  return s + ")";
}

// (A (x) B)-valued product of two coactions, A-leg multiplied in A.
Tensor coaction_product(const ComoduleAlgebra& B, const Tensor& x, const Tensor& y) {
  Tensor out(2);
  for (const auto& [kx, cx] : x)
    for (const auto& [ky, cy] : y) {
      Elem a = B.A->mult(kx[0], ky[0]);
      Elem b = B.mult(kx[1], ky[1]);
      for (const auto& [la, ca] : a)
        for (const auto& [lb, cb] : b) out.add({la, lb}, cx * cy * ca * cb);
    }
  return out;
}

}  // namespace

Report verify_comodule_algebra(const ComoduleAlgebra& B, const SampleSpec& spec) {
  Report r;
  const HopfPresentation& A = *B.A;
  auto one = label_tuples(B.labels, B.finite, spec, 1);
  auto two = label_tuples(B.labels, B.finite, spec, 2);
  auto three = label_tuples(B.labels, B.finite, spec, 3);
  auto E = [](const Label& l) { return Elem::basis(l); };
  auto over = [&](const LabelTuples& T, const std::string& id, const std::string& anchor,
                  std::function<std::optional<std::string>(const LabelTuple&)> f) {
    run_check(r, id, anchor, T.spec, [&]() {
      return sweep(T.tuples.size(), [&](size_t i) { return f(T.tuples[i]); });
    });
  };
  over(three, "associativity", "comodule *-algebra: associative product", [&](const LabelTuple& t) -> std::optional<std::string> {
    Elem l = bmult(B, B.mult(t[0], t[1]), E(t[2])), rr = bmult(B, E(t[0]), B.mult(t[1], t[2]));
    if (l != rr) return neq("(a,b,c)=" + tuple_str(t), belem_str(B, l), belem_str(B, rr));
    return std::nullopt;
  });
  over(one, "unit", "comodule *-algebra: unit", [&](const LabelTuple& t) -> std::optional<std::string> {
    Elem a = E(t[0]);
    if (bmult(B, B.unit, a) != a || bmult(B, a, B.unit) != a) return "unit law fails at " + t[0].str();
    return std::nullopt;
  });
  over(one, "star_involution", "comodule *-algebra: * is an involution", [&](const LabelTuple& t) -> std::optional<std::string> {
    Elem a = E(t[0]), ss = bstar(B, B.star(t[0]));
    if (ss != a) return neq("a=" + t[0].str(), belem_str(B, ss), belem_str(B, a));
    return std::nullopt;
  });
  over(two, "star_antimultiplicative", "comodule *-algebra: (ab)* = b* a*", [&](const LabelTuple& t) -> std::optional<std::string> {
    Elem l = bstar(B, B.mult(t[0], t[1])), rr = bmult(B, B.star(t[1]), B.star(t[0]));
    if (l != rr) return neq("(a,b)=" + tuple_str(t), belem_str(B, l), belem_str(B, rr));
    return std::nullopt;
  });
  over(one, "coaction_counit", "comodule: (eps (x) id) delta = id", [&](const LabelTuple& t) -> std::optional<std::string> {
    Elem out;
    for (const auto& [k, c] : B.coaction(t[0])) out.add(k[1], c * A.counit(k[0]));
    if (out != E(t[0])) return "counit law fails at " + t[0].str();
    return std::nullopt;
  });
  over(one, "coaction_coassociative", "comodule: (Delta (x) id) delta = (id (x) delta) delta", [&](const LabelTuple& t) -> std::optional<std::string> {
    Tensor l(3), rr(3);
    for (const auto& [k, c] : B.coaction(t[0])) {
      for (const auto& [d, cd] : A.coproduct(k[0])) l.add({d[0], d[1], k[1]}, c * cd);
      for (const auto& [d, cd] : B.coaction(k[1])) rr.add({k[0], d[0], d[1]}, c * cd);
    }
    if (l != rr) return neq("a=" + t[0].str(), l.str(), rr.str());
    return std::nullopt;
  });
  over(two, "coaction_multiplicative", "comodule algebra: delta(ab) = delta(a) delta(b)", [&](const LabelTuple& t) -> std::optional<std::string> {
    Tensor l = bcoact(B, B.mult(t[0], t[1]));
    Tensor rr = coaction_product(B, B.coaction(t[0]), B.coaction(t[1]));
    if (l != rr) return neq("(a,b)=" + tuple_str(t), l.str(), rr.str());
    return std::nullopt;
  });
  over(one, "coaction_star", "comodule *-algebra: delta is a *-homomorphism", [&](const LabelTuple& t) -> std::optional<std::string> {
    Tensor l = bcoact(B, B.star(t[0]));
    Tensor rr(2);
    for (const auto& [k, c] : B.coaction(t[0])) {
      Elem sa = A.star(k[0]), sb = B.star(k[1]);
      for (const auto& [la, ca] : sa)
        for (const auto& [lb, cb] : sb) rr.add({la, lb}, c.conj() * ca * cb);
    }
    if (l != rr) return neq("a=" + t[0].str(), l.str(), rr.str());
    return std::nullopt;
  });
  return r;
}

ModPtr free_module(std::string name, std::vector<std::string> basis) {
  auto m = std::make_shared<FreeModule>();
  m->name = std::move(name);
  m->basis = std::move(basis);
  return m;
}

ModPtr tensor_module(const FreeModule& E, const FreeModule& F) {
  std::vector<std::string> b;
  for (const auto& e : E.basis)
    for (const auto& f : F.basis) b.push_back(e + "(x)" + f);
  return free_module(E.name + "(x)" + F.name, std::move(b));
}

ModPtr bar_module(const FreeModule& E) {
  std::vector<std::string> b;
  for (const auto& e : E.basis) b.push_back("bar(" + e + ")");
  return free_module("bar(" + E.name + ")", std::move(b));
}

Vec vzero(size_t r) { return Vec(r); }

Vec vunit(const ComoduleAlgebra& B, size_t r, size_t i) {
  Vec v(r);
  v[i] = B.unit;
  return v;
}

Vec vadd(Vec a, const Vec& b) {
  if (a.size() != b.size()) throw Error("rank mismatch in module sum");
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Vec vsub(Vec a, const Vec& b) {
  if (a.size() != b.size()) throw Error("rank mismatch in module difference");
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

Vec vscale(const Cyc& c, Vec v) {
  for (auto& x : v) x *= c;
  return v;
}

bool vis_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vec vlmul(const ComoduleAlgebra& B, const Elem& b, const Vec& v) {
  Vec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = bmult(B, b, v[i]);
  return out;
}

Vec vrmul(const ComoduleAlgebra& B, const Vec& v, const Elem& b) {
  Vec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = bmult(B, v[i], b);
  return out;
}

Vec vtensor(const ComoduleAlgebra& B, const Vec& v, const Vec& w) {
  Vec out(v.size() * w.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    for (size_t j = 0; j < w.size(); ++j)
      if (!w[j].is_zero()) out[i * w.size() + j] = bmult(B, v[i], w[j]);
  }
  return out;
}

Vec vbar(const ComoduleAlgebra& B, const Vec& v) {
  Vec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = bstar(B, v[i]);
  return out;
}

std::map<Label, Vec> vcoact(const ComoduleAlgebra& B, const Vec& v) {
  std::map<Label, Vec> out;
  for (size_t i = 0; i < v.size(); ++i)
    for (const auto& [a, part] : coact_split(B, v[i])) {
      auto& slot = out[a];
      if (slot.empty()) slot.resize(v.size());
      slot[i] += part;
    }
  return out;
}

Vec vapply(const ComoduleAlgebra& B, const std::vector<Vec>& table, const Vec& v) {
  if (table.size() != v.size()) throw Error("map table has wrong rank");
  Vec out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (out.empty()) out.resize(table[i].size());
    if (v[i].is_zero()) continue;
    out = vadd(std::move(out), vlmul(B, v[i], table[i]));
  }
  return out;
}

Vec vflip(const Vec& t, size_t r1, size_t r2) {
  Vec out(t.size());
  for (size_t i = 0; i < r1; ++i)
    for (size_t j = 0; j < r2; ++j) out[j * r1 + i] = t[i * r2 + j];
  return out;
}

std::string vstr(const ComoduleAlgebra& B, const FreeModule& E, const Vec& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "[" + belem_str(B, v[i]) + "] " + (i < E.basis.size() ? E.basis[i] : "e" + std::to_string(i));
  }
  return s.empty() ? "0" : s;
}

TwistContext make_twist_context(ComodPtr B, CocyclePtr c) {
  auto t = twist_hopf(c);
  return TwistContext{c, B, twist_comodule_algebra(B, t)};
}

namespace {

Vec phi_generic(const TwistContext& t, const PairFunctional& g, const ComoduleAlgebra& ctx, const Vec& v,
                const Vec& w) {
  Vec out(v.size() * w.size());
  auto cv = vcoact(*t.B, v);
  auto cw = vcoact(*t.B, w);
  for (const auto& [a, va] : cv)
    for (const auto& [b, wb] : cw) {
      Cyc k = g(a, b);
      if (k.is_zero()) continue;
      out = vadd(std::move(out), vscale(k, vtensor(ctx, va, wb)));
    }
  return out;
}

Vec nf_generic(const TwistContext& t, bool inverse, const Vec& x, size_t r1, size_t r2) {
  Vec out(r1 * r2);
  for (size_t i = 0; i < r1; ++i)
    for (size_t j = 0; j < r2; ++j) {
      const Elem& c = x[i * r2 + j];
      if (c.is_zero()) continue;
      Vec v(r1), w(r2);
      v[i] = c;
      w[j] = t.B->unit;
      out = vadd(std::move(out), inverse ? phi_inv_pure(t, v, w) : phi_pure(t, v, w));
    }
  return out;
}

}  // namespace

Vec phi_pure(const TwistContext& t, const Vec& v, const Vec& w) {
  return phi_generic(t, t.c->gamma, *t.B, v, w);
}

Vec phi_inv_pure(const TwistContext& t, const Vec& v, const Vec& w) {
  return phi_generic(t, t.c->gamma_bar, *t.Bg, v, w);
}

Vec phi_nf(const TwistContext& t, const Vec& x, size_t r1, size_t r2) { return nf_generic(t, false, x, r1, r2); }

Vec phi_inv_nf(const TwistContext& t, const Vec& x, size_t r1, size_t r2) {
  return nf_generic(t, true, x, r1, r2);
}

Vec frak_N(const TwistContext& t, const Vec& z, bool omit_vbar) {
  Vec x = vbar(*t.Bg, z);  // the element of Gamma(E) whose conjugate is z
  if (omit_vbar) return vbar(*t.B, x);
  const auto& A = *t.c->A;
  Vec out(z.size());
  for (const auto& [a, xa] : vcoact(*t.B, x)) {
    Cyc k = eval_lin(t.c->Vbar, A.star(a));
    if (!k.is_zero()) out = vadd(std::move(out), vscale(k, vbar(*t.B, xa)));
  }
  return out;
}

Vec frak_N_inv(const TwistContext& t, const Vec& z) {
  Vec x = vbar(*t.B, z);
  const auto& A = *t.c->A;
  Vec out(z.size());
  for (const auto& [a, xa] : vcoact(*t.B, x)) {
    Cyc k = eval_lin(t.c->V, A.star(a));
    if (!k.is_zero()) out = vadd(std::move(out), vscale(k, vbar(*t.Bg, xa)));
  }
  return out;
}

Elem frak_S(const TwistContext& t, const std::vector<Elem>& f, const Vec& v) {
  if (f.size() != v.size()) throw Error("functional has wrong rank");
  const auto& A = *t.c->A;
  Elem out;
  for (const auto& [a, va] : vcoact(*t.B, v)) {
    Elem fv;
    for (size_t i = 0; i < va.size(); ++i)
      if (!va[i].is_zero()) fv += bmult(*t.B, va[i], f[i]);
    if (fv.is_zero()) continue;
    auto split = coact_split(*t.B, fv);
    for (const auto& [k, c] : A.coproduct(a)) {
      Elem s = A.antipode(k[1]);
      for (const auto& [b, y] : split) {
        Cyc w = c * eval_pair(t.c->gamma, Elem::basis(k[0]), mult(A, s, Elem::basis(b)));
        if (!w.is_zero()) out += w * y;
      }
    }
  }
  return out;
}

Elem sample_belem(const ComoduleAlgebra& B, int box, Sampler& s, int terms) {
  auto L = B.labels(B.finite ? 0 : box);
  Elem e;
  for (int i = 0; i < terms; ++i) e.add(s.pick(L), s.coeff(B.N));
  if (e.is_zero()) e = B.unit;
  return e;
}

Vec sample_vec(const ComoduleAlgebra& B, size_t rank, int box, Sampler& s) {
  Vec v(rank);
  for (auto& x : v) x = sample_belem(B, box, s, 1);
  return v;
}

namespace {

// Sampled scalar matrix: a covariant bimodule map between modules with
// central coinvariant bases.
std::vector<Vec> sample_scalar_map(const ComoduleAlgebra& B, size_t r1, size_t r2, Sampler& s) {
  std::vector<Vec> m(r1, Vec(r2));
  for (auto& row : m)
    for (auto& x : row) x = s.coeff(B.N) * B.unit;
  return m;
}

std::vector<Vec> conj_map(const ComoduleAlgebra& B, const std::vector<Vec>& m) {
  std::vector<Vec> out;
  for (const auto& row : m) out.push_back(vbar(B, row));
  return out;
}

std::vector<Vec> tensor_map(const ComoduleAlgebra& B, const std::vector<Vec>& f, const std::vector<Vec>& g) {
  std::vector<Vec> out;
  for (const auto& fi : f)
    for (const auto& gj : g) out.push_back(vtensor(B, fi, gj));
  return out;
}

}  // namespace

Report verify_bar_functor(const TwistContext& t, const FreeModule& E, const FreeModule& F, const SampleSpec& spec,
                          bool omit_vbar) {
  Report r;
  const auto& B = *t.B;
  const auto& Bg = *t.Bg;
  const size_t r1 = E.rank(), r2 = F.rank();
  std::ostringstream os;
  os << spec.samples << " sampled elements box=" << spec.box << " seed=" << spec.seed;
  const std::string sspec = os.str();
  auto N = [&](const Vec& z) { return frak_N(t, z, omit_vbar); };

  auto sampled = [&](const std::string& id, const std::string& anchor, uint64_t salt,
                     std::function<std::optional<std::string>(Sampler&)> f) {
    run_check(r, id, anchor, sspec, [&]() {
      return sweep(static_cast<size_t>(spec.samples), [&](size_t i) {
        Sampler s(spec.seed * 1000003 + salt * 7919 + i);
        return f(s);
      });
    });
  };

  sampled("hexagon", "bar functor: (N_F (x) N_E) Upsilon_g conj(phi^-1) = phi^-1 Gamma(Upsilon) N_{E(x)F}", 1,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec tt = sample_vec(B, r1 * r2, spec.box, s);
            Vec sg = phi_inv_nf(t, tt, r1, r2);
            Vec lhs(r2 * r1);
            for (size_t i = 0; i < r1; ++i)
              for (size_t j = 0; j < r2; ++j) {
                const Elem& c = sg[i * r2 + j];
                if (c.is_zero()) continue;
                Vec zE(r1);
                zE[i] = bstar(Bg, c);
                lhs = vadd(std::move(lhs), vtensor(Bg, N(vunit(Bg, r2, j)), N(zE)));
              }
            Vec w = N(vbar(Bg, tt));
            Vec rhs = phi_inv_nf(t, vflip(w, r1, r2), r2, r1);
            if (lhs != rhs) {
              auto FE = tensor_module(*bar_module(F), *bar_module(E));
              return "t=" + vstr(B, *tensor_module(E, F), tt) + ": lhs=" + vstr(Bg, *FE, lhs) +
                     " rhs=" + vstr(Bg, *FE, rhs);
            }
            return std::nullopt;
          });
  sampled("bb", "bar functor: Gamma(bb) = N_Ebar conj(N_E) bb_{Gamma E}", 2,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec v = sample_vec(B, r1, spec.box, s);
            Vec w = N(vbar(Bg, v));
            Vec rhs = N(vbar(Bg, w));
            if (rhs != v) return "v=" + vstr(B, E, v) + ": rhs=" + vstr(B, E, rhs);
            return std::nullopt;
          });
  sampled("n_inverse", "N is an isomorphism: N^-1 N = id and N N^-1 = id", 3,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec z = sample_vec(B, r1, spec.box, s);
            Vec a = frak_N_inv(t, N(z)), b = N(frak_N_inv(t, z));
            if (a != z) return "N^-1 N at z=" + vstr(Bg, E, z) + " gives " + vstr(Bg, E, a);
            if (b != z) return "N N^-1 at z=" + vstr(B, E, z) + " gives " + vstr(B, E, b);
            return std::nullopt;
          });
  sampled("n_bilinear", "N is a B_gamma-bimodule map", 4, [&](Sampler& s) -> std::optional<std::string> {
    Vec z = sample_vec(B, r1, spec.box, s);
    Elem b = sample_belem(B, spec.box, s, 1);
    // on conj(Gamma E): b . zbar = conj(z ._g b*)
    Vec bz = vlmul(Bg, b, z), zb = vrmul(Bg, z, b);
    Vec l1 = N(bz), r1v = vlmul(Bg, b, N(z));
    Vec l2 = N(zb), r2v = vrmul(Bg, N(z), b);
    if (l1 != r1v) return "left action at b=" + belem_str(B, b) + ": lhs=" + vstr(B, E, l1) + " rhs=" + vstr(B, E, r1v);
    if (l2 != r2v) return "right action at b=" + belem_str(B, b) + ": lhs=" + vstr(B, E, l2) + " rhs=" + vstr(B, E, r2v);
    return std::nullopt;
  });
  sampled("n_covariant", "N is A_gamma-covariant", 5, [&](Sampler& s) -> std::optional<std::string> {
    Vec z = sample_vec(B, r1, spec.box, s);
    auto lhs = vcoact(B, N(z));
    std::map<Label, Vec> rhs;
    for (const auto& [a, za] : vcoact(B, z)) {
      auto nz = N(za);
      if (!vis_zero(nz)) rhs[a] = nz;
    }
    for (auto it = lhs.begin(); it != lhs.end();) {
      if (vis_zero(it->second)) it = lhs.erase(it);
      else ++it;
    }
    if (lhs != rhs) return "coaction mismatch at z=" + vstr(Bg, E, z);
    return std::nullopt;
  });
  sampled("n_natural", "N is natural: N_F conj(Gamma f) = Gamma(fbar) N_E", 6,
          [&](Sampler& s) -> std::optional<std::string> {
            auto f = sample_scalar_map(B, r1, r2, s);
            Vec z = sample_vec(B, r1, spec.box, s);
            Vec lhs = N(vbar(Bg, vapply(Bg, f, vbar(Bg, z))));
            Vec rhs = vapply(B, conj_map(B, f), N(z));
            if (lhs != rhs) return "z=" + vstr(Bg, E, z) + ": lhs=" + vstr(B, F, lhs) + " rhs=" + vstr(B, F, rhs);
            return std::nullopt;
          });
  sampled("phi_natural", "phi is natural: (Gamma f (x) Gamma g) phi^-1 = phi^-1 Gamma(f (x) g)", 7,
          [&](Sampler& s) -> std::optional<std::string> {
            auto f = sample_scalar_map(B, r1, r1, s);
            auto g = sample_scalar_map(B, r2, r2, s);
            Vec tt = sample_vec(B, r1 * r2, spec.box, s);
            auto fg = tensor_map(B, f, g);
            Vec lhs = vapply(Bg, tensor_map(Bg, f, g), phi_inv_nf(t, tt, r1, r2));
            Vec rhs = phi_inv_nf(t, vapply(B, fg, tt), r1, r2);
            if (lhs != rhs) return "t=" + vstr(B, *tensor_module(E, F), tt);
            return std::nullopt;
          });
  sampled("phi_inverse", "phi phi^-1 = id on normal forms and pure tensors", 8,
          [&](Sampler& s) -> std::optional<std::string> {
            Vec v = sample_vec(B, r1, spec.box, s), w = sample_vec(B, r2, spec.box, s);
            Vec tt = phi_pure(t, v, w);
            Vec back = phi_nf(t, phi_inv_nf(t, tt, r1, r2), r1, r2);
            if (back != tt) return "v=" + vstr(B, E, v) + " w=" + vstr(B, F, w);
            // phi of the pure tensor v (x)_g w equals its normal form image
            Vec nf = vtensor(Bg, v, w);
            if (phi_nf(t, nf, r1, r2) != tt) return "pure/normal form mismatch at v=" + vstr(B, E, v);
            return std::nullopt;
          });
  return r;
}

Report verify_module(const ComoduleAlgebra& B, const FreeModule& E, const SampleSpec& spec) {
  Report r;
  std::ostringstream os;
  os << spec.samples << " sampled (b, v, b') box=" << spec.box << " seed=" << spec.seed;
  run_check(r, "hopf_module", "relative Hopf module: delta(a e b) = delta(a) delta(e) delta(b)", os.str(), [&]() {
    return sweep(static_cast<size_t>(spec.samples), [&](size_t i) -> std::optional<std::string> {
      Sampler s(spec.seed * 1000003 + 11 * 7919 + i);
      Elem a = sample_belem(B, spec.box, s, 1), b = sample_belem(B, spec.box, s, 1);
      Vec v = sample_vec(B, E.rank(), spec.box, s);
      Vec avb = vrmul(B, vlmul(B, a, v), b);
      if (avb != vlmul(B, a, vrmul(B, v, b))) return "bimodule associativity fails at v=" + vstr(B, E, v);
      auto lhs = vcoact(B, avb);
      std::map<Label, Vec> rhs;
      auto ca = coact_split(B, a), cb = coact_split(B, b);
      for (const auto& [la, xa] : ca)
        for (const auto& [lv, xv] : vcoact(B, v))
          for (const auto& [lb, xb] : cb) {
            Elem h = B.A->mult(la, lv);
            h = mult(*B.A, h, Elem::basis(lb));
            Vec piece = vrmul(B, vlmul(B, xa, xv), xb);
            for (const auto& [lh, ch] : h) {
              auto& slot = rhs[lh];
              if (slot.empty()) slot.resize(E.rank());
              slot = vadd(std::move(slot), vscale(ch, piece));
            }
          }
      auto clean = [](std::map<Label, Vec>& m) {
        for (auto it = m.begin(); it != m.end();) {
          if (vis_zero(it->second)) it = m.erase(it);
          else ++it;
        }
      };
      clean(lhs);
      clean(rhs);
      if (lhs != rhs) return "coaction compatibility fails at v=" + vstr(B, E, v);
      return std::nullopt;
    });
  });
  return r;
}

}  // namespace cotwist
