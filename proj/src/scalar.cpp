#include "cotwist/scalar.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "cotwist/linalg.hpp"

namespace cotwist {

namespace {

long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

using Poly = std::vector<Rational>;  // low degree first

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// p = q*d + r over Q
void poly_divmod(const Poly& p, const Poly& d, Poly& q, Poly& r) {
  r = p;
  trim(r);
  q.assign(r.size() >= d.size() ? r.size() - d.size() + 1 : 0, Rational(0));
  const Rational& lead = d.back();
  while (!r.empty() && r.size() >= d.size()) {
    size_t shift = r.size() - d.size();
    Rational c = r.back() / lead;
    q[shift] = c;
    for (size_t j = 0; j < d.size(); ++j) r[shift + j] -= c * d[j];
    trim(r);
  }
}

Poly poly_sub_mul(const Poly& a, const Poly& q, const Poly& b) {
  // a - q*b
  Poly out = a;
  if (!q.empty() && !b.empty()) {
    if (out.size() < q.size() + b.size() - 1) out.resize(q.size() + b.size() - 1);
    for (size_t i = 0; i < q.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) out[i + j] -= q[i] * b[j];
  }
  trim(out);
  return out;
}

std::vector<long> divisors(long n) {
  std::vector<long> out;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

}  // namespace

long euler_phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

const std::vector<long>& cyclotomic_poly(long n) {
  thread_local std::map<long, std::vector<long>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1 divided by every Phi_d, d | n, d < n
  std::vector<long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (long d : divisors(n)) {
    if (d == n) continue;
    const auto& den = cyclotomic_poly(d);
    std::vector<long> q(num.size() - den.size() + 1, 0);
    for (long i = static_cast<long>(num.size()) - 1; i >= static_cast<long>(den.size()) - 1; --i) {
      long c = num[i];  // den is monic
      long shift = i - (static_cast<long>(den.size()) - 1);
      q[shift] = c;
      for (size_t j = 0; j < den.size(); ++j) num[shift + j] -= c * den[j];
    }
    num = q;
  }
  return cache.emplace(n, std::move(num)).first->second;
}

std::string rational_str(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Cyc::Cyc(long n) {
  if (n != 0) terms_.emplace_back(0, Rational(n));
}

Cyc::Cyc(const Rational& q) {
  if (sgn(q) != 0) {
    terms_.emplace_back(0, q);
    terms_.back().second.canonicalize();
  }
}

Cyc Cyc::root(long N, long k) {
  if (N <= 0) throw Error("root of unity order must be positive");
  Cyc c;
  c.order_ = N;
  c.terms_.emplace_back(mod(k, N), Rational(1));
  return c;
}

Cyc make_root(long N, long k) { return Cyc::root(N, k); }

Cyc Cyc::from_terms(long N, std::vector<Term> terms) {
  if (N <= 0) throw Error("root of unity order must be positive");
  Cyc c;
  c.order_ = N;
  c.terms_ = std::move(terms);
  for (auto& t : c.terms_) t.second.canonicalize();
  c.normalize();
  return c;
}

void Cyc::normalize() {
  for (auto& t : terms_) t.first = mod(t.first, order_);
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first) out.back().second += t.second;
    else out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const Term& t) { return sgn(t.second) == 0; }),
            out.end());
  terms_ = std::move(out);
}

Cyc Cyc::embed(long M) const {
  if (M % order_ != 0) throw Error("embedding order must be a multiple");
  Cyc c;
  c.order_ = M;
  long f = M / order_;
  c.terms_.reserve(terms_.size());
  for (const auto& [k, q] : terms_) c.terms_.emplace_back(k * f, q);
  return c;
}

Cyc Cyc::conj() const {
  Cyc c;
  c.order_ = order_;
  c.terms_.reserve(terms_.size());
  for (const auto& [k, q] : terms_) c.terms_.emplace_back(mod(-k, order_), q);
  c.normalize();
  return c;
}

Cyc Cyc::operator-() const {
  Cyc c = *this;
  for (auto& t : c.terms_) t.second = -t.second;
  return c;
}

Cyc& Cyc::operator+=(const Cyc& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  long L = std::lcm(order_, o.order_);
  if (L != order_) *this = embed(L);
  if (L == o.order_) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  } else {
    Cyc e = o.embed(L);
    terms_.insert(terms_.end(), e.terms_.begin(), e.terms_.end());
  }
  normalize();
  return *this;
}

Cyc& Cyc::operator-=(const Cyc& o) { return *this += -o; }

Cyc operator*(const Cyc& a, const Cyc& b) {
  if (a.terms_.empty() || b.terms_.empty()) return Cyc();
  long L = std::lcm(a.order_, b.order_);
  long fa = L / a.order_, fb = L / b.order_;
  Cyc c;
  c.order_ = L;
  c.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ka, qa] : a.terms_)
    for (const auto& [kb, qb] : b.terms_) c.terms_.emplace_back(ka * fa + kb * fb, qa * qb);
  c.normalize();
  return c;
}

Cyc& Cyc::operator*=(const Cyc& o) { return *this = *this * o; }
Cyc& Cyc::operator/=(const Cyc& o) { return *this = *this / o; }

std::vector<Rational> Cyc::reduced() const {
  const auto& phi = cyclotomic_poly(order_);
  long deg = static_cast<long>(phi.size()) - 1;
  std::vector<Rational> v(std::max<long>(order_, deg), Rational(0));
  for (const auto& [k, q] : terms_) v[k] += q;
  for (long d = static_cast<long>(v.size()) - 1; d >= deg; --d) {
    if (sgn(v[d]) == 0) continue;
    Rational c = v[d];
    for (long j = 0; j <= deg; ++j) v[d - deg + j] -= c * phi[j];
  }
  v.resize(deg);
  return v;
}

bool Cyc::is_zero() const {
  if (terms_.empty()) return true;
  if (terms_.size() == 1) return false;
  for (const auto& q : reduced())
    if (sgn(q) != 0) return false;
  return true;
}

bool Cyc::is_one() const {
  if (terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1) return true;
  return (*this - Cyc(1)).is_zero();
}

bool operator==(const Cyc& a, const Cyc& b) {
  if (a.order_ == b.order_ && a.terms_ == b.terms_) return true;
  return (a - b).is_zero();
}

Cyc Cyc::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (terms_.size() == 1) {
    Cyc c;
    c.order_ = order_;
    c.terms_.emplace_back(mod(-terms_[0].first, order_), 1 / terms_[0].second);
    return c;
  }
  // extended Euclid in Q[x] against Phi_N
  const auto& phi = cyclotomic_poly(order_);
  Poly r0(phi.begin(), phi.end()), r1 = reduced();
  trim(r1);
  Poly s0, s1{Rational(1)};
  while (!r1.empty()) {
    Poly q, r;
    poly_divmod(r0, r1, q, r);
    Poly s2 = poly_sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant
  Rational g = r0[0];
  std::vector<Term> t;
  for (size_t i = 0; i < s0.size(); ++i)
    if (sgn(s0[i]) != 0) t.emplace_back(static_cast<long>(i), s0[i] / g);
  return from_terms(order_, std::move(t));
}

bool Cyc::as_monomial(Rational& q, long& d, long& k) const {
  bool found = false;
  for (long j = 0; j < order_; ++j) {
    auto v = (*this * root(order_, -j)).reduced();
    bool mono = true;
    for (size_t i = 1; i < v.size(); ++i)
      if (sgn(v[i]) != 0) { mono = false; break; }
    if (!mono || v.empty() || sgn(v[0]) == 0) continue;
    long g = std::gcd(j, order_);
    long dj = order_ / g, kj = j / g;
    bool better = !found || dj < d || (dj == d && sgn(q) < 0 && sgn(v[0]) > 0);
    if (better) {
      q = v[0];
      d = dj;
      k = kj;
      found = true;
    }
  }
  return found;
}

namespace {

std::string term_str(const Rational& c, long d, long k) {
  std::string z = "zeta(" + std::to_string(d) + ")";
  if (k != 1) z += "^" + std::to_string(k);
  if (k == 0 || d == 1) return rational_str(c);
  if (c == 1) return z;
  if (c == -1) return "-" + z;
  return rational_str(c) + " * " + z;
}

}  // namespace

std::string Cyc::str() const {
  if (is_zero()) return "0";
  Rational q;
  long d = 1, k = 0;
  if (as_monomial(q, d, k)) return term_str(q, d, k);
  auto target = reduced();
  for (long dd : divisors(order_)) {
    long ph = euler_phi(dd);
    LinearSystem<Rational> sys;
    sys.ncols = static_cast<int>(ph);
    std::vector<std::vector<Rational>> cols;
    for (long j = 0; j < ph; ++j) cols.push_back(root(dd, j).embed(order_).reduced());
    for (size_t row = 0; row < target.size(); ++row) {
      SparseRow<Rational> r;
      for (long j = 0; j < ph; ++j)
        if (sgn(cols[j][row]) != 0) r[static_cast<int>(j)] = cols[j][row];
      sys.add_row(std::move(r), target[row]);
    }
    auto sol = solve_linear(sys);
    if (!sol.consistent) continue;
    std::string out;
    for (long j = 0; j < ph; ++j) {
      if (sgn(sol.x[j]) == 0) continue;
      if (!out.empty()) out += " + ";
      out += term_str(sol.x[j], dd, j);
    }
    return out;
  }
  return "0";  // unreachable: dd == order_ always solves
}

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (ch != ' ') out += ch;
  return out;
}

Cyc parse_term(const std::string& t) {
  auto z = t.find("zeta(");
  if (z == std::string::npos) {
    Rational q(t);
    q.canonicalize();
    return Cyc(q);
  }
  std::string pre = t.substr(0, z);
  Rational c(1);
  if (pre == "-") c = -1;
  else if (!pre.empty()) {
    if (pre.back() != '*') throw Error("malformed scalar term: " + t);
    pre.pop_back();
    c = Rational(pre);
  }
  c.canonicalize();
  auto close = t.find(')', z);
  if (close == std::string::npos) throw Error("malformed scalar term: " + t);
  long d = std::stol(t.substr(z + 5, close - z - 5));
  long k = 1;
  if (close + 1 < t.size()) {
    if (t[close + 1] != '^') throw Error("malformed scalar term: " + t);
    k = std::stol(t.substr(close + 2));
  }
  return Cyc(c) * Cyc::root(d, k);
}

}  // namespace

Cyc Cyc::parse(const std::string& s) {
  std::string t = strip(s);
  if (t.empty()) throw Error("empty scalar");
  Cyc out;
  size_t start = 0;
  for (size_t i = 1; i <= t.size(); ++i) {
    if (i == t.size() || (t[i] == '+' && t[i - 1] != '^')) {
      out += parse_term(t.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace cotwist
