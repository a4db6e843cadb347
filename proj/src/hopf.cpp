#include "cotwist/hopf.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cotwist {

Label::Label(std::initializer_list<int> xs) {
  if (xs.size() > v.size()) throw Error("label too long");
  n = static_cast<uint8_t>(xs.size());
  std::copy(xs.begin(), xs.end(), v.begin());
}

Label Label::of(const std::vector<int>& xs) {
  if (xs.size() > 4) throw Error("label too long");
  Label l;
  l.n = static_cast<uint8_t>(xs.size());
  std::copy(xs.begin(), xs.end(), l.v.begin());
  return l;
}

std::string Label::str() const {
  std::string s = "(";
  for (size_t i = 0; i < n; ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

Elem Elem::basis(const Label& l, const Cyc& c) {
  Elem e;
  e.add(l, c);
  return e;
}

void Elem::add(const Label& l, const Cyc& c) {
  if (c.terms().empty()) return;
  auto it = t_.find(l);
  if (it == t_.end()) {
    if (!c.is_zero()) t_.emplace(l, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

Elem& Elem::operator+=(const Elem& o) {
  for (const auto& [l, c] : o.t_) add(l, c);
  return *this;
}

Elem& Elem::operator-=(const Elem& o) {
  for (const auto& [l, c] : o.t_) add(l, -c);
  return *this;
}

Elem& Elem::operator*=(const Cyc& c) {
  if (c.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [l, x] : t_) x *= c;
  return *this;
}

bool operator==(const Elem& a, const Elem& b) {
  if (a.t_.size() != b.t_.size()) return false;
  auto it = b.t_.begin();
  for (const auto& [l, c] : a.t_) {
    if (it->first != l || it->second != c) return false;
    ++it;
  }
  return true;
}

Cyc Elem::coeff(const Label& l) const {
  auto it = t_.find(l);
  return it == t_.end() ? Cyc() : it->second;
}

std::string Elem::str(const std::string& sym) const {
  if (t_.empty()) return "0";
  std::string s;
  for (const auto& [l, c] : t_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")*" + sym + l.str();
  }
  return s;
}

void Tensor::add(const LabelTuple& key, const Cyc& c) {
  if (arity_ == 0) arity_ = key.size();
  if (key.size() != arity_) throw Error("tensor arity mismatch");
  if (c.terms().empty()) return;
  auto it = t_.find(key);
  if (it == t_.end()) {
    if (!c.is_zero()) t_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

Tensor& Tensor::operator+=(const Tensor& o) {
  for (const auto& [k, c] : o.t_) add(k, c);
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  for (const auto& [k, c] : o.t_) add(k, -c);
  return *this;
}

bool operator==(const Tensor& a, const Tensor& b) {
  if (a.t_.size() != b.t_.size()) return false;
  auto it = b.t_.begin();
  for (const auto& [k, c] : a.t_) {
    if (it->first != k || it->second != c) return false;
    ++it;
  }
  return true;
}

std::string Tensor::str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : t_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")*";
    for (size_t i = 0; i < k.size(); ++i) {
      if (i) s += "(x)";
      s += k[i].str();
    }
  }
  return s;
}

void check_label(const HopfPresentation& A, const Label& l) {
  if (!A.contains(l)) throw Error("label " + l.str() + " not in " + A.name);
}

Elem mult(const HopfPresentation& A, const Elem& a, const Elem& b) {
  Elem out;
  for (const auto& [la, ca] : a)
    for (const auto& [lb, cb] : b) out += (ca * cb) * A.mult(la, lb);
  return out;
}

Tensor coproduct(const HopfPresentation& A, const Elem& a) {
  Tensor out(2);
  for (const auto& [l, c] : a)
    for (const auto& [k, x] : A.coproduct(l)) out.add(k, c * x);
  return out;
}

namespace {

Tensor expand_leg(const HopfPresentation& A, const Tensor& t, size_t leg) {
  Tensor out(t.arity() + 1);
  for (const auto& [k, c] : t) {
    for (const auto& [d, x] : A.coproduct(k[leg])) {
      LabelTuple nk;
      nk.reserve(k.size() + 1);
      nk.insert(nk.end(), k.begin(), k.begin() + leg);
      nk.push_back(d[0]);
      nk.push_back(d[1]);
      nk.insert(nk.end(), k.begin() + leg + 1, k.end());
      out.add(nk, c * x);
    }
  }
  return out;
}

}  // namespace

Tensor iterated_coproduct(const HopfPresentation& A, const Label& a, int k) {
  Tensor t(1);
  t.add({a}, Cyc(1));
  for (int i = 0; i < k; ++i) t = expand_leg(A, t, 0);
  return t;
}

Tensor iterated_coproduct_right(const HopfPresentation& A, const Label& a, int k) {
  Tensor t(1);
  t.add({a}, Cyc(1));
  for (int i = 0; i < k; ++i) t = expand_leg(A, t, t.arity() - 1);
  return t;
}

Cyc counit(const HopfPresentation& A, const Elem& a) {
  Cyc out;
  for (const auto& [l, c] : a) out += c * A.counit(l);
  return out;
}

Elem antipode(const HopfPresentation& A, const Elem& a) {
  Elem out;
  for (const auto& [l, c] : a) out += c * A.antipode(l);
  return out;
}

Elem antipode_inv(const HopfPresentation& A, const Elem& a) {
  Elem out;
  for (const auto& [l, c] : a) out += c * A.antipode_inv(l);
  return out;
}

Elem star(const HopfPresentation& A, const Elem& a) {
  Elem out;
  for (const auto& [l, c] : a) out += c.conj() * A.star(l);
  return out;
}

Tensor star_legs(const HopfPresentation& A, const Tensor& t) {
  Tensor out(t.arity());
  for (const auto& [k, c] : t) {
    Tensor acc(t.arity());
    std::vector<Elem> legs;
    for (const auto& l : k) legs.push_back(A.star(l));
    // expand the product of leg combinations
    std::vector<std::pair<LabelTuple, Cyc>> cur{{{}, c.conj()}};
    for (const auto& e : legs) {
      std::vector<std::pair<LabelTuple, Cyc>> next;
      for (const auto& [key, x] : cur)
        for (const auto& [l, y] : e) {
          auto nk = key;
          nk.push_back(l);
          next.emplace_back(std::move(nk), x * y);
        }
      cur = std::move(next);
    }
    for (const auto& [key, x] : cur) out.add(key, x);
  }
  return out;
}

Tensor tensor_mult(const HopfPresentation& A, const Tensor& a, const Tensor& b) {
  if (a.arity() != b.arity()) throw Error("tensor arity mismatch");
  Tensor out(a.arity());
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      std::vector<std::pair<LabelTuple, Cyc>> cur{{{}, ca * cb}};
      for (size_t i = 0; i < ka.size(); ++i) {
        Elem p = A.mult(ka[i], kb[i]);
        std::vector<std::pair<LabelTuple, Cyc>> next;
        for (const auto& [key, x] : cur)
          for (const auto& [l, y] : p) {
            auto nk = key;
            nk.push_back(l);
            next.emplace_back(std::move(nk), x * y);
          }
        cur = std::move(next);
      }
      for (const auto& [key, x] : cur) out.add(key, x);
    }
  return out;
}

Tensor flip(const Tensor& t) {
  Tensor out(t.arity());
  for (const auto& [k, c] : t) {
    LabelTuple r(k.rbegin(), k.rend());
    out.add(r, c);
  }
  return out;
}

FiniteGroup symmetric_group(int n) {
  FiniteGroup G;
  G.name = "S" + std::to_string(n);
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  G.order = static_cast<int>(perms.size());
  auto index = [&](const std::vector<int>& q) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  G.table.assign(G.order, std::vector<int>(G.order));
  G.inverse.resize(G.order);
  for (int a = 0; a < G.order; ++a) {
    std::string nm;
    for (int x : perms[a]) nm += std::to_string(x);
    G.names.push_back(nm);
    std::vector<int> inv(n);
    for (int i = 0; i < n; ++i) inv[perms[a][i]] = i;
    G.inverse[a] = index(inv);
    for (int b = 0; b < G.order; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      G.table[a][b] = index(c);
    }
  }
  G.identity = 0;
  return G;
}

FiniteGroup cyclic_product_group(const std::vector<int>& moduli) {
  FiniteGroup G;
  G.name = "Z";
  int order = 1;
  for (int m : moduli) {
    if (m <= 0) throw Error("finite group needs positive moduli");
    order *= m;
    G.name += "_" + std::to_string(m);
  }
  G.order = order;
  auto decode = [&](int x) {
    std::vector<int> d(moduli.size());
    for (size_t i = moduli.size(); i-- > 0;) {
      d[i] = x % moduli[i];
      x /= moduli[i];
    }
    return d;
  };
  auto encode = [&](const std::vector<int>& d) {
    int x = 0;
    for (size_t i = 0; i < moduli.size(); ++i) x = x * moduli[i] + d[i];
    return x;
  };
  G.table.assign(order, std::vector<int>(order));
  G.inverse.resize(order);
  for (int a = 0; a < order; ++a) {
    auto da = decode(a);
    std::string nm;
    for (int x : da) nm += std::to_string(x);
    G.names.push_back(nm);
    std::vector<int> inv(moduli.size());
    for (size_t i = 0; i < moduli.size(); ++i) inv[i] = (moduli[i] - da[i]) % moduli[i];
    G.inverse[a] = encode(inv);
    for (int b = 0; b < order; ++b) {
      auto db = decode(b);
      std::vector<int> s(moduli.size());
      for (size_t i = 0; i < moduli.size(); ++i) s[i] = (da[i] + db[i]) % moduli[i];
      G.table[a][b] = encode(s);
    }
  }
  G.identity = 0;
  return G;
}

namespace {

Label normalize_group_label(const std::vector<int>& moduli, Label l) {
  for (size_t i = 0; i < moduli.size(); ++i)
    if (moduli[i] > 0) l.v[i] = ((l.v[i] % moduli[i]) + moduli[i]) % moduli[i];
  return l;
}

}  // namespace

HopfPtr group_algebra(const std::vector<int>& moduli) {
  if (moduli.empty() || moduli.size() > 4) throw Error("group algebra rank must be 1..4");
  for (int m : moduli)
    if (m < 0) throw Error("negative modulus");
  auto A = std::make_shared<HopfPresentation>();
  A->name = "C[Z";
  for (size_t i = 0; i < moduli.size(); ++i) {
    if (i) A->name += "x";
    A->name += moduli[i] == 0 ? std::string("Z") : "Z" + std::to_string(moduli[i]);
  }
  A->name = "C[" + A->name.substr(3) + "]";
  const size_t n = moduli.size();
  A->contains = [moduli, n](const Label& l) {
    if (l.n != n) return false;
    for (size_t i = 0; i < n; ++i)
      if (moduli[i] > 0 && (l.v[i] < 0 || l.v[i] >= moduli[i])) return false;
    return true;
  };
  A->mult = [moduli, n](const Label& a, const Label& b) {
    Label c;
    c.n = static_cast<uint8_t>(n);
    for (size_t i = 0; i < n; ++i) c.v[i] = a.v[i] + b.v[i];
    return Elem::basis(normalize_group_label(moduli, c));
  };
  Label zero;
  zero.n = static_cast<uint8_t>(n);
  A->unit = Elem::basis(zero);
  A->coproduct = [](const Label& a) {
    Tensor t(2);
    t.add({a, a}, Cyc(1));
    return t;
  };
  A->counit = [](const Label&) { return Cyc(1); };
  auto neg = [moduli, n](const Label& a) {
    Label c;
    c.n = static_cast<uint8_t>(n);
    for (size_t i = 0; i < n; ++i) c.v[i] = -a.v[i];
    return Elem::basis(normalize_group_label(moduli, c));
  };
  A->antipode = neg;
  A->antipode_inv = neg;
  A->star = neg;
  A->labels = [moduli, n](int M) {
    std::vector<Label> out{Label()};
    out[0].n = static_cast<uint8_t>(n);
    for (size_t i = 0; i < n; ++i) {
      std::vector<Label> next;
      int lo = moduli[i] > 0 ? 0 : -M;
      int hi = moduli[i] > 0 ? moduli[i] - 1 : M;
      for (const auto& l : out)
        for (int x = lo; x <= hi; ++x) {
          Label m = l;
          m.v[i] = x;
          next.push_back(m);
        }
      out = std::move(next);
    }
    return out;
  };
  A->finite = std::all_of(moduli.begin(), moduli.end(), [](int m) { return m > 0; });
  A->grouplike = true;
  A->cocommutative = true;
  A->symbol = "u";
  return A;
}

HopfPtr function_algebra(const FiniteGroup& G) {
  auto A = std::make_shared<HopfPresentation>();
  A->name = "Fun(" + G.name + ")";
  auto g = std::make_shared<FiniteGroup>(G);
  A->contains = [g](const Label& l) { return l.n == 1 && l.v[0] >= 0 && l.v[0] < g->order; };
  A->mult = [](const Label& a, const Label& b) { return a == b ? Elem::basis(a) : Elem(); };
  for (int x = 0; x < G.order; ++x) A->unit.add(Label{x}, Cyc(1));
  A->coproduct = [g](const Label& a) {
    Tensor t(2);
    for (int h = 0; h < g->order; ++h) t.add({Label{h}, Label{g->table[g->inverse[h]][a.v[0]]}}, Cyc(1));
    return t;
  };
  A->counit = [g](const Label& a) { return a.v[0] == g->identity ? Cyc(1) : Cyc(); };
  auto inv = [g](const Label& a) { return Elem::basis(Label{g->inverse[a.v[0]]}); };
  A->antipode = inv;
  A->antipode_inv = inv;
  A->star = [](const Label& a) { return Elem::basis(a); };
  A->labels = [g](int) {
    std::vector<Label> out;
    for (int x = 0; x < g->order; ++x) out.push_back(Label{x});
    return out;
  };
  A->finite = true;
  A->grouplike = false;
  A->cocommutative = false;
  for (int a = 0; a < G.order && !A->cocommutative; ++a) (void)a;
  bool abelian = true;
  for (int a = 0; a < G.order; ++a)
    for (int b = 0; b < G.order; ++b)
      if (G.table[a][b] != G.table[b][a]) abelian = false;
  A->cocommutative = abelian;
  A->symbol = "d";
  return A;
}

}  // namespace cotwist
