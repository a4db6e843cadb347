#include <sstream>

#include "cotwist/hopf.hpp"
#include "cotwist/sweep.hpp"

namespace cotwist {

std::vector<Label> sample_labels(const HopfPresentation& A, int box) { return A.labels(box); }

std::string box_spec(const HopfPresentation& A, const SampleSpec& s, size_t count, bool exhaustive) {
  std::ostringstream os;
  if (A.finite) os << "all labels";
  else os << "box=" << s.box;
  os << " n=" << count;
  if (exhaustive) os << " exhaustive";
  else os << " seed=" << s.seed;
  return os.str();
}

LabelTuples label_tuples(const std::function<std::vector<Label>(int)>& labels, bool finite,
                         const SampleSpec& spec, int k) {
  constexpr size_t limit = 20000;
  LabelTuples out;
  std::ostringstream os;
  auto add_all = [&](const std::vector<Label>& L, const std::vector<std::vector<size_t>>& idx) {
    for (const auto& t : idx) {
      LabelTuple v;
      for (size_t i : t) v.push_back(L[i]);
      out.tuples.push_back(std::move(v));
    }
  };
  if (finite) {
    auto L = labels(0);
    bool ex = false;
    add_all(L, index_tuples(L.size(), k, limit, spec.samples, spec.seed, &ex));
    os << (ex ? "exhaustive" : "sampled") << " over all " << L.size() << " labels, " << out.tuples.size()
       << " tuples";
    if (!ex) os << " seed=" << spec.seed;
  } else {
    int core = std::min(k >= 3 ? 1 : 2, spec.box);
    auto C = labels(core);
    bool ex = false;
    add_all(C, index_tuples(C.size(), k, limit, 0, spec.seed, &ex));
    auto L = labels(spec.box);
    add_all(L, index_tuples(L.size(), k, 0, spec.samples, spec.seed, nullptr));
    os << "exhaustive core box=" << core << " plus " << spec.samples << " samples in box=" << spec.box
       << " seed=" << spec.seed;
  }
  out.spec = os.str();
  return out;
}

namespace {

constexpr size_t kPairLimit = 20000;

std::string mismatch(const std::string& what, const std::string& lhs, const std::string& rhs) {
  return what + ": lhs=" + lhs + " rhs=" + rhs;
}

Elem apply_mult_legs(const HopfPresentation& A, const Tensor& t, bool s_left) {
  Elem out;
  for (const auto& [k, c] : t) {
    Elem a = Elem::basis(k[0]), b = Elem::basis(k[1]);
    if (s_left) a = antipode(A, a);
    else b = antipode(A, b);
    out += c * mult(A, a, b);
  }
  return out;
}

}  // namespace

Report verify_hopf_axioms(const HopfPresentation& A, const SampleSpec& spec) {
  Report r;
  const auto L = sample_labels(A, spec.box);
  const std::string single = box_spec(A, spec, L.size(), true);
  const std::string anchor_star = "Hopf *-algebra: Delta is a *-homomorphism";
  const std::string anchor_ss = "Hopf *-algebra identity S(S(a*)*) = a";

  auto per_label = [&](const std::string& id, const std::string& anchor,
                       std::function<std::optional<std::string>(const Label&)> f) {
    run_check(r, id, anchor, single, [&]() { return sweep(L.size(), [&](size_t i) { return f(L[i]); }); });
  };

  per_label("coassociativity", "Hopf algebra axioms (coassociativity)", [&](const Label& a) -> std::optional<std::string> {
    auto l = iterated_coproduct(A, a, 2), rr = iterated_coproduct_right(A, a, 2);
    if (l != rr) return mismatch("a=" + a.str(), l.str(), rr.str());
    return std::nullopt;
  });
  per_label("counit", "Hopf algebra axioms (counit)", [&](const Label& a) -> std::optional<std::string> {
    Elem left, right;
    for (const auto& [k, c] : A.coproduct(a)) {
      left += (c * A.counit(k[0])) * Elem::basis(k[1]);
      right += (c * A.counit(k[1])) * Elem::basis(k[0]);
    }
    Elem id = Elem::basis(a);
    if (left != id) return mismatch("(eps x id)Delta at a=" + a.str(), left.str(), id.str());
    if (right != id) return mismatch("(id x eps)Delta at a=" + a.str(), right.str(), id.str());
    return std::nullopt;
  });
  per_label("antipode", "Hopf algebra axioms (antipode)", [&](const Label& a) -> std::optional<std::string> {
    Tensor d = A.coproduct(a);
    Elem unit = A.counit(a) * A.unit;
    Elem l = apply_mult_legs(A, d, true), rr = apply_mult_legs(A, d, false);
    if (l != unit) return mismatch("S(a1)a2 at a=" + a.str(), l.str(), unit.str());
    if (rr != unit) return mismatch("a1 S(a2) at a=" + a.str(), rr.str(), unit.str());
    return std::nullopt;
  });
  per_label("antipode_bijective", "Hopf *-algebra: S invertible", [&](const Label& a) -> std::optional<std::string> {
    Elem x = Elem::basis(a);
    Elem l = antipode(A, antipode_inv(A, x)), rr = antipode_inv(A, antipode(A, x));
    if (l != x) return mismatch("S(S^-1 a) at a=" + a.str(), l.str(), x.str());
    if (rr != x) return mismatch("S^-1(S a) at a=" + a.str(), rr.str(), x.str());
    return std::nullopt;
  });
  per_label("star_involution", anchor_star, [&](const Label& a) -> std::optional<std::string> {
    Elem x = Elem::basis(a);
    Elem l = star(A, star(A, x));
    if (l != x) return mismatch("a** at a=" + a.str(), l.str(), x.str());
    Tensor d1 = coproduct(A, star(A, x)), d2 = star_legs(A, A.coproduct(a));
    if (d1 != d2) return mismatch("Delta(a*) at a=" + a.str(), d1.str(), d2.str());
    return std::nullopt;
  });
  per_label("s_s_star", anchor_ss, [&](const Label& a) -> std::optional<std::string> {
    Elem x = Elem::basis(a);
    Elem l = antipode(A, star(A, antipode(A, star(A, x))));
    if (l != x) return mismatch("S(S(a*)*) at a=" + a.str(), l.str(), x.str());
    return std::nullopt;
  });
  if (A.cocommutative) {
    per_label("cocommutative", "cocommutative Hopf algebra", [&](const Label& a) -> std::optional<std::string> {
      Tensor d = A.coproduct(a), f = flip(d);
      if (d != f) return mismatch("flip Delta at a=" + a.str(), f.str(), d.str());
      return std::nullopt;
    });
  }

  bool ex2 = false;
  auto pairs = index_tuples(L.size(), 2, kPairLimit, spec.samples, spec.seed, &ex2);
  run_check(r, "multiplicativity", "Hopf *-algebra: Delta multiplicative, * antimultiplicative",
            box_spec(A, spec, pairs.size(), ex2), [&]() {
              return sweep(pairs.size(), [&](size_t i) -> std::optional<std::string> {
                const Label& a = L[pairs[i][0]];
                const Label& b = L[pairs[i][1]];
                Elem ab = A.mult(a, b);
                Tensor l = coproduct(A, ab);
                Tensor rr = tensor_mult(A, A.coproduct(a), A.coproduct(b));
                if (l != rr) return mismatch("Delta(ab) a=" + a.str() + " b=" + b.str(), l.str(), rr.str());
                Elem s1 = star(A, ab), s2 = mult(A, A.star(b), A.star(a));
                if (s1 != s2) return mismatch("(ab)* a=" + a.str() + " b=" + b.str(), s1.str(), s2.str());
                if (A.counit(a) * A.counit(b) != counit(A, ab))
                  return std::string("eps(ab) != eps(a)eps(b) at a=") + a.str() + " b=" + b.str();
                return std::nullopt;
              });
            });
  bool ex3 = false;
  auto triples = index_tuples(L.size(), 3, kPairLimit, spec.samples, spec.seed + 1, &ex3);
  run_check(r, "associativity", "Hopf algebra axioms (associativity, unit)",
            box_spec(A, spec, triples.size(), ex3), [&]() {
              return sweep(triples.size(), [&](size_t i) -> std::optional<std::string> {
                Elem a = Elem::basis(L[triples[i][0]]), b = Elem::basis(L[triples[i][1]]),
                     c = Elem::basis(L[triples[i][2]]);
                Elem l = mult(A, mult(A, a, b), c), rr = mult(A, a, mult(A, b, c));
                if (l != rr)
                  return mismatch("(ab)c a=" + L[triples[i][0]].str() + " b=" + L[triples[i][1]].str() +
                                      " c=" + L[triples[i][2]].str(),
                                  l.str(), rr.str());
                if (mult(A, A.unit, a) != a || mult(A, a, A.unit) != a)
                  return std::string("unit law fails at ") + L[triples[i][0]].str();
                return std::nullopt;
              });
            });
  return r;
}

}  // namespace cotwist
