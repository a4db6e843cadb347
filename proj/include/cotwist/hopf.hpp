#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cotwist/report.hpp"
#include "cotwist/scalar.hpp"

namespace cotwist {

// Basis label: a short integer tuple (group element coordinates, or a finite
// group element index).
struct Label {
  uint8_t n = 0;
  std::array<int32_t, 4> v{};

  Label() = default;
  Label(std::initializer_list<int> xs);
  static Label of(const std::vector<int>& xs);

  int operator[](size_t i) const { return v[i]; }
  int& operator[](size_t i) { return v[i]; }
  size_t size() const { return n; }
  auto operator<=>(const Label&) const = default;
  std::string str() const;
};

using LabelTuple = std::vector<Label>;

// Finite linear combination of basis labels with no stored zeros.
class Elem {
 public:
  Elem() = default;
  static Elem basis(const Label& l, const Cyc& c = Cyc(1));

  void add(const Label& l, const Cyc& c);
  Elem& operator+=(const Elem& o);
  Elem& operator-=(const Elem& o);
  Elem& operator*=(const Cyc& c);
  friend Elem operator+(Elem a, const Elem& b) { return a += b; }
  friend Elem operator-(Elem a, const Elem& b) { return a -= b; }
  friend Elem operator*(const Cyc& c, Elem a) { return a *= c; }
  friend bool operator==(const Elem& a, const Elem& b);
  friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }

  bool is_zero() const { return t_.empty(); }
  Cyc coeff(const Label& l) const;
  const std::map<Label, Cyc>& terms() const { return t_; }
  auto begin() const { return t_.begin(); }
  auto end() const { return t_.end(); }
  size_t size() const { return t_.size(); }
  std::string str(const std::string& sym = "u") const;

 private:
  std::map<Label, Cyc> t_;
};

// Finite linear combination of pure basis tensors of fixed arity.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(size_t arity) : arity_(arity) {}

  void add(const LabelTuple& key, const Cyc& c);
  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  friend bool operator==(const Tensor& a, const Tensor& b);
  friend bool operator!=(const Tensor& a, const Tensor& b) { return !(a == b); }

  size_t arity() const { return arity_; }
  bool is_zero() const { return t_.empty(); }
  const std::map<LabelTuple, Cyc>& terms() const { return t_; }
  auto begin() const { return t_.begin(); }
  auto end() const { return t_.end(); }
  size_t size() const { return t_.size(); }
  std::string str() const;

 private:
  size_t arity_ = 0;
  std::map<LabelTuple, Cyc> t_;
};

// Hopf *-algebra presented by tables on basis labels.
struct HopfPresentation {
  std::string name;
  std::function<bool(const Label&)> contains;
  std::function<Elem(const Label&, const Label&)> mult;
  Elem unit;
  std::function<Tensor(const Label&)> coproduct;
  std::function<Cyc(const Label&)> counit;
  std::function<Elem(const Label&)> antipode;
  std::function<Elem(const Label&)> antipode_inv;
  std::function<Elem(const Label&)> star;
  // All labels (finite) or the lattice box |m_i| <= M (infinite).
  std::function<std::vector<Label>(int)> labels;
  bool finite = false;
  bool grouplike = false;      // every basis element is grouplike
  bool cocommutative = false;
  std::string symbol = "u";
};

using HopfPtr = std::shared_ptr<const HopfPresentation>;

// Element-level evaluation (linear, resp. antilinear for star).
void check_label(const HopfPresentation& A, const Label& l);
Elem mult(const HopfPresentation& A, const Elem& a, const Elem& b);
Tensor coproduct(const HopfPresentation& A, const Elem& a);
// k-fold iterated coproduct, arity k+1, bracketing (Delta (x) id ... ) Delta.
Tensor iterated_coproduct(const HopfPresentation& A, const Label& a, int k);
Tensor iterated_coproduct_right(const HopfPresentation& A, const Label& a, int k);
Cyc counit(const HopfPresentation& A, const Elem& a);
Elem antipode(const HopfPresentation& A, const Elem& a);
Elem antipode_inv(const HopfPresentation& A, const Elem& a);
Elem star(const HopfPresentation& A, const Elem& a);
Tensor star_legs(const HopfPresentation& A, const Tensor& t);  // (* x ... x *)
Tensor tensor_mult(const HopfPresentation& A, const Tensor& a, const Tensor& b);
Tensor flip(const Tensor& t);

// Finite group given by its multiplication table.
struct FiniteGroup {
  std::string name;
  int order = 0;
  int identity = 0;
  std::vector<std::vector<int>> table;  // table[g][h] = g h
  std::vector<int> inverse;
  std::vector<std::string> names;
};

FiniteGroup symmetric_group(int n);
FiniteGroup cyclic_product_group(const std::vector<int>& moduli);

// Group algebra of Z^a x Z_{m_1} x ...; modulus 0 means a free factor.
HopfPtr group_algebra(const std::vector<int>& moduli);
// Algebra of functions on a finite group.
HopfPtr function_algebra(const FiniteGroup& G);

// Labels used by verifiers: every label of a finite algebra, else the box.
std::vector<Label> sample_labels(const HopfPresentation& A, int box);
std::string box_spec(const HopfPresentation& A, const SampleSpec& s, size_t count, bool exhaustive);

// k-tuples of labels for identity sweeps: every tuple of a finite family when
// small enough; otherwise an exhaustive core box plus seeded samples from the box.
struct LabelTuples {
  std::vector<LabelTuple> tuples;
  std::string spec;
};
LabelTuples label_tuples(const std::function<std::vector<Label>(int)>& labels, bool finite,
                         const SampleSpec& spec, int k);

// Coassociativity, counit, antipode, *-compatibility, bijectivity of S,
// S(S(a*)*) = a and, when flagged, cocommutativity.
Report verify_hopf_axioms(const HopfPresentation& A, const SampleSpec& spec);

}  // namespace cotwist
