#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cotwist/scalar.hpp"

namespace cotwist {

inline bool field_is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool field_is_zero(const Cyc& c) { return c.is_zero(); }
inline Rational field_inverse(const Rational& q) { return 1 / q; }
inline Cyc field_inverse(const Cyc& c) { return c.inverse(); }

template <class F>
using SparseRow = std::map<int, F>;

template <class F>
struct LinearSystem {
  int ncols = 0;
  std::vector<SparseRow<F>> rows;
  std::vector<F> rhs;

  void add_row(SparseRow<F> row, F b) {
    rows.push_back(std::move(row));
    rhs.push_back(std::move(b));
  }
};

template <class F>
struct LinearSolution {
  bool consistent = true;
  int rank = 0;
  std::vector<F> x;             // particular solution, free columns set to 0
  std::vector<int> free_cols;   // kernel dimension == free_cols.size()
  int inconsistent_row = -1;    // index into the input rows
};

// Sparse Gauss-Jordan elimination over an exact field.
template <class F>
LinearSolution<F> solve_linear(const LinearSystem<F>& sys) {
  struct Pivot {
    SparseRow<F> row;
    F rhs;
  };
  std::map<int, Pivot> piv;  // leading column -> normalized row
  LinearSolution<F> out;
  for (size_t r = 0; r < sys.rows.size(); ++r) {
    SparseRow<F> row = sys.rows[r];
    F b = sys.rhs[r];
    for (auto it = row.begin(); it != row.end();) {
      if (field_is_zero(it->second)) it = row.erase(it);
      else ++it;
    }
    while (!row.empty()) {
      auto lead = row.begin();
      auto p = piv.find(lead->first);
      if (p == piv.end()) break;
      F c = lead->second;
      for (const auto& [col, v] : p->second.row) {
        auto& slot = row[col];
        slot -= c * v;
        if (field_is_zero(slot)) row.erase(col);
      }
      b -= c * p->second.rhs;
    }
    if (row.empty()) {
      if (!field_is_zero(b) && out.consistent) {
        out.consistent = false;
        out.inconsistent_row = static_cast<int>(r);
      }
      continue;
    }
    F inv = field_inverse(row.begin()->second);
    for (auto& [col, v] : row) v *= inv;
    b *= inv;
    int lead = row.begin()->first;
    piv.emplace(lead, Pivot{std::move(row), std::move(b)});
  }
  out.rank = static_cast<int>(piv.size());
  // back substitution, highest leading column first
  for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
    auto& row = it->second.row;
    // rows with larger leads are already reduced, so they only carry free columns
    std::vector<int> cols;
    for (auto jt = std::next(row.begin()); jt != row.end(); ++jt)
      if (piv.count(jt->first)) cols.push_back(jt->first);
    for (int col : cols) {
      const auto& q = piv.at(col);
      F c = row.at(col);
      row.erase(col);
      for (const auto& [k, v] : q.row) {
        if (k == col) continue;
        auto& slot = row[k];
        slot -= c * v;
        if (field_is_zero(slot)) row.erase(k);
      }
      it->second.rhs -= c * q.rhs;
    }
  }
  out.x.assign(sys.ncols, F(0));
  for (auto& [col, p] : piv) out.x[col] = p.rhs;
  for (int c = 0; c < sys.ncols; ++c)
    if (!piv.count(c)) out.free_cols.push_back(c);
  return out;
}

// Inverse of a square matrix, or nullopt when singular.
template <class F>
std::optional<std::vector<std::vector<F>>> invert_matrix(const std::vector<std::vector<F>>& m) {
  const size_t n = m.size();
  std::vector<std::vector<F>> out(n, std::vector<F>(n, F(0)));
  for (size_t col = 0; col < n; ++col) {
    LinearSystem<F> sys;
    sys.ncols = static_cast<int>(n);
    // unknown column x of the inverse: m x = e_col
    for (size_t i = 0; i < n; ++i) {
      SparseRow<F> row;
      for (size_t j = 0; j < n; ++j)
        if (!field_is_zero(m[i][j])) row[static_cast<int>(j)] = m[i][j];
      sys.add_row(std::move(row), i == col ? F(1) : F(0));
    }
    auto sol = solve_linear(sys);
    if (!sol.consistent || !sol.free_cols.empty()) return std::nullopt;
    for (size_t i = 0; i < n; ++i) out[i][col] = sol.x[i];
  }
  return out;
}

}  // namespace cotwist
