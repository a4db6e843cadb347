#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cotwist {

using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

// Element of Q(zeta_N) in the power basis, zeta_N = exp(2 pi i / N).
// Terms are kept sorted by exponent in [0, N) and are not reduced modulo the
// cyclotomic polynomial; reduction happens in is_zero / reduced().
class Cyc {
 public:
  using Term = std::pair<long, Rational>;

  Cyc() = default;
  Cyc(long n);                     // NOLINT(google-explicit-constructor)
  Cyc(const Rational& q);          // NOLINT(google-explicit-constructor)

  static Cyc root(long N, long k);
  static Cyc from_terms(long N, std::vector<Term> terms);

  long order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }

  Cyc embed(long M) const;  // M must be a multiple of order()
  Cyc conj() const;
  Cyc inverse() const;
  bool is_zero() const;
  bool is_one() const;
  // Coordinates modulo Phi_N, length phi(N).
  std::vector<Rational> reduced() const;
  // Some root of unity times a rational?  Returns (q, N', k) with value q*zeta_{N'}^k.
  bool as_monomial(Rational& q, long& d, long& k) const;

  Cyc operator-() const;
  Cyc& operator+=(const Cyc& o);
  Cyc& operator-=(const Cyc& o);
  Cyc& operator*=(const Cyc& o);
  Cyc& operator/=(const Cyc& o);

  friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
  friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
  friend Cyc operator*(const Cyc& a, const Cyc& b);
  friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }
  friend bool operator==(const Cyc& a, const Cyc& b);
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  // Canonical symbolic form, e.g. "zeta(3)^2", "-1/2 * zeta(4)", "1 + 2 * zeta(5)^3".
  std::string str() const;
  static Cyc parse(const std::string& s);

 private:
  long order_ = 1;
  std::vector<Term> terms_;

  void normalize();
};

Cyc make_root(long N, long k);

long euler_phi(long n);
// Integer coefficients of the n-th cyclotomic polynomial, low degree first.
const std::vector<long>& cyclotomic_poly(long n);

std::string rational_str(const Rational& q);

}  // namespace cotwist
