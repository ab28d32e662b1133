#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "cyclotomic.hpp"

namespace bcher {

using Vec = std::vector<Cyclo>;
using Matrix = std::vector<Vec>;  // row-major

inline Matrix zero_matrix(const FieldPtr& f, std::size_t rows, std::size_t cols) {
  return Matrix(rows, Vec(cols, Cyclo(f)));
}

inline Matrix identity_matrix(const FieldPtr& f, std::size_t n) {
  Matrix m = zero_matrix(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Cyclo(f, 1L);
  return m;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
  const std::size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  const FieldPtr& f = a.at(0).at(0).field();
  Matrix out = zero_matrix(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (std::size_t j = 0; j < c; ++j)
        if (!b[t][j].is_zero()) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

inline Vec mat_vec(const Matrix& a, const Vec& v) {
  Vec out(a.size(), Cyclo(v.at(0).field()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!a[i][j].is_zero() && !v[j].is_zero()) out[i] += a[i][j] * v[j];
  return out;
}

inline Matrix transpose(const Matrix& a) {
  if (a.empty()) return {};
  Matrix t = zero_matrix(a[0][0].field(), a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline Matrix mat_add(Matrix a, const Matrix& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] += b[i][j];
  return a;
}

inline Matrix mat_scale(Matrix a, const Cyclo& s) {
  for (auto& row : a)
    for (auto& x : row) x = x * s;
  return a;
}

inline bool is_zero_matrix(const Matrix& a) {
  for (const auto& row : a)
    for (const auto& x : row)
      if (!x.is_zero()) return false;
  return true;
}

inline bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

// Kronecker product a (x) b.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t ar = a.size(), ac = a[0].size(), br = b.size(), bc = b[0].size();
  Matrix out = zero_matrix(a[0][0].field(), ar * br, ac * bc);
  for (std::size_t i = 0; i < ar; ++i)
    for (std::size_t j = 0; j < ac; ++j) {
      if (a[i][j].is_zero()) continue;
      for (std::size_t k = 0; k < br; ++k)
        for (std::size_t l = 0; l < bc; ++l)
          if (!b[k][l].is_zero()) out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
    }
  return out;
}

// Reduced row echelon form of the row space: nonzero rows, pivots ascending, pivot entries 1.
inline Matrix rref(Matrix m) {
  if (m.empty()) return m;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Cyclo inv = m[r][c].inverse();
    for (auto& x : m[r]) x = x * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Cyclo f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  m.resize(r);
  return m;
}

inline std::size_t rank(const Matrix& m) { return rref(m).size(); }

// Basis of {v : m v = 0}, returned as rows, in reduced echelon form.
inline Matrix kernel(const Matrix& m, std::size_t cols, const FieldPtr& f) {
  Matrix e = m.empty() ? Matrix{} : rref(m);
  std::vector<long> pivot_of_col(cols, -1);
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t c = 0; c < cols; ++c)
      if (!e[i][c].is_zero()) {
        pivot_of_col[c] = static_cast<long>(i);
        break;
      }
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    Vec v(cols, Cyclo(f));
    v[free] = Cyclo(f, 1L);
    for (std::size_t c = 0; c < cols; ++c)
      if (pivot_of_col[c] >= 0) v[c] = -e[static_cast<std::size_t>(pivot_of_col[c])][free];
    basis.push_back(std::move(v));
  }
  return rref(basis);
}

// Row space of a stacked on b.
inline Matrix stack(Matrix a, const Matrix& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Incremental sparse echelon basis; used when spanning sets are large and sparse.
class SparseEchelon {
 public:
  explicit SparseEchelon(FieldPtr f) : f_(std::move(f)) {}

  // Returns true if the row increased the rank.
  bool add(std::map<std::size_t, Cyclo> row) {
    while (!row.empty()) {
      auto lead = row.begin();
      auto it = pivots_.find(lead->first);
      if (it == pivots_.end()) {
        Cyclo inv = lead->second.inverse();
        for (auto& [k, v] : row) v = v * inv;
        pivots_.emplace(lead->first, std::move(row));
        return true;
      }
      Cyclo factor = lead->second;
      for (const auto& [k, v] : it->second) {
        auto slot = row.find(k);
        Cyclo delta = factor * v;
        if (slot == row.end()) {
          row.emplace(k, -delta);
        } else {
          slot->second -= delta;
          if (slot->second.is_zero()) row.erase(slot);
        }
      }
    }
    return false;
  }

  std::size_t rank() const { return pivots_.size(); }

 private:
  FieldPtr f_;
  std::map<std::size_t, std::map<std::size_t, Cyclo>> pivots_;
};

}  // namespace bcher
