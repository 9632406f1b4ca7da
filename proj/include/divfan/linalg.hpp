#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "divfan/rational.hpp"

namespace divfan::linalg {

using Row = std::vector<Rational>;
using Matrix = std::vector<Row>;

inline Rational dot(const Row& a, const Row& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::RankMismatch, "dot product length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const Row& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

/// Scale a nonzero rational vector to the primitive integer vector on its ray.
inline Row primitive(const Row& v) {
  Integer l = lcm_of_denominators(v);
  Row w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] * l;
  Integer g = gcd_of_numerators(w);
  if (g == 0) return w;
  for (auto& x : w) {
    x /= g;
    x.canonicalize();
  }
  return w;
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

inline std::size_t rank(Matrix m, std::size_t ncols) { return rref(m, ncols).size(); }

inline std::size_t rank(const std::vector<Row>& rows) {
  if (rows.empty()) return 0;
  return rank(rows, rows.front().size());
}

/// Basis of {x : m x = 0}.
inline std::vector<Row> nullspace(Matrix m, std::size_t ncols) {
  auto piv = rref(m, ncols);
  std::vector<bool> is_piv(ncols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<Row> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    Row v(ncols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
    basis.push_back(v);
  }
  return basis;
}

/// Some solution of a x = b, or nothing when inconsistent.
inline std::optional<Row> solve(const Matrix& a, const Row& b, std::size_t ncols) {
  Matrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto piv = rref(aug, ncols + 1);
  if (!piv.empty() && piv.back() == ncols) return std::nullopt;
  Row x(ncols, Rational(0));
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug[i][ncols];
  return x;
}

inline Rational det(Matrix m) {
  std::size_t n = m.size();
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return d;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  std::size_t n = m.size();
  Matrix aug = m;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n, Rational(0));
    aug[i][n + i] = 1;
  }
  auto piv = rref(aug, n);
  if (piv.size() < n) return std::nullopt;
  Matrix inv(n, Row(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

inline Row mat_vec(const Matrix& m, const Row& v) {
  Row out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], v);
  return out;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
  std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  Matrix c(n, Row(p, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < p; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

inline Matrix transpose(const Matrix& a, std::size_t ncols) {
  Matrix t(ncols, Row(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j) t[j][i] = a[i][j];
  return t;
}

inline Matrix identity(std::size_t n) {
  Matrix m(n, Row(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace divfan::linalg
