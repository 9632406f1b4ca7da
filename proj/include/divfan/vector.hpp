#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "divfan/linalg.hpp"

namespace divfan {

struct NTag {};
struct MTag {};

template <class Tag>
struct dual_tag;
template <>
struct dual_tag<NTag> {
  using type = MTag;
};
template <>
struct dual_tag<MTag> {
  using type = NTag;
};

/// Coordinate vector tagged with the lattice it lives in (N or its dual M).
template <class Tag>
struct Vector {
  std::vector<Rational> c;

  Vector() = default;
  explicit Vector(std::vector<Rational> v) : c(std::move(v)) {}
  Vector(std::initializer_list<Rational> v) : c(v) {}
  static Vector zero(std::size_t n) { return Vector(std::vector<Rational>(n, Rational(0))); }
  static Vector unit(std::size_t n, std::size_t i) {
    auto v = zero(n);
    v.c[i] = 1;
    return v;
  }

  std::size_t size() const { return c.size(); }
  const Rational& operator[](std::size_t i) const { return c[i]; }
  Rational& operator[](std::size_t i) { return c[i]; }

  bool is_zero() const { return linalg::is_zero(c); }
  bool is_integral() const {
    for (const auto& x : c)
      if (!is_integer(x)) return false;
    return true;
  }

  Vector operator+(const Vector& o) const {
    check(o);
    Vector r = *this;
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
    return r;
  }
  Vector operator-(const Vector& o) const {
    check(o);
    Vector r = *this;
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
    return r;
  }
  Vector operator-() const {
    Vector r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  Vector operator*(const Rational& s) const {
    Vector r = *this;
    for (auto& x : r.c) x *= s;
    return r;
  }
  bool operator==(const Vector& o) const { return c == o.c; }
  bool operator!=(const Vector& o) const { return c != o.c; }
  bool operator<(const Vector& o) const { return c < o.c; }

 private:
  void check(const Vector& o) const {
    if (o.c.size() != c.size()) throw Error(ErrorKind::RankMismatch, "vector lengths differ");
  }
};

using LatticeVector = Vector<NTag>;
using DualVector = Vector<MTag>;

template <class Tag>
Rational pairing(const Vector<typename dual_tag<Tag>::type>& m, const Vector<Tag>& v) {
  return linalg::dot(m.c, v.c);
}

template <class Tag>
std::string to_string(const Vector<Tag>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

/// Integer matrix acting on column vectors: (F v)_i = sum_j F[i][j] v_j.
struct IntMatrix {
  std::vector<std::vector<long>> a;
  std::size_t rows() const { return a.size(); }
  std::size_t cols() const { return a.empty() ? 0 : a[0].size(); }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m;
    m.a.assign(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m.a[i][i] = 1;
    return m;
  }
  static IntMatrix scalar(std::size_t n, long s) {
    auto m = identity(n);
    for (std::size_t i = 0; i < n; ++i) m.a[i][i] = s;
    return m;
  }
  LatticeVector apply(const LatticeVector& v) const {
    if (v.size() != cols()) throw Error(ErrorKind::RankMismatch, "matrix/vector size mismatch");
    LatticeVector r = LatticeVector::zero(rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j)
        if (a[i][j] != 0) r.c[i] += Rational(a[i][j]) * v.c[j];
    return r;
  }
  /// Dual map M' -> M: m ↦ m ∘ F.
  DualVector pullback(const DualVector& m) const {
    if (m.size() != rows()) throw Error(ErrorKind::RankMismatch, "matrix/dual vector size mismatch");
    DualVector r = DualVector::zero(cols());
    for (std::size_t j = 0; j < cols(); ++j)
      for (std::size_t i = 0; i < rows(); ++i)
        if (a[i][j] != 0) r.c[j] += Rational(a[i][j]) * m.c[i];
    return r;
  }
  IntMatrix operator*(const IntMatrix& o) const {
    if (cols() != o.rows()) throw Error(ErrorKind::ChainMismatch, "matrix product size mismatch");
    IntMatrix r;
    r.a.assign(rows(), std::vector<long>(o.cols(), 0));
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t k = 0; k < cols(); ++k)
        for (std::size_t j = 0; j < o.cols(); ++j) r.a[i][j] += a[i][k] * o.a[k][j];
    return r;
  }
  Rational det() const {
    linalg::Matrix m(rows(), linalg::Row(cols()));
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) m[i][j] = a[i][j];
    return linalg::det(m);
  }
  bool operator==(const IntMatrix& o) const { return a == o.a; }
  bool operator!=(const IntMatrix& o) const { return a != o.a; }
  bool operator<(const IntMatrix& o) const { return a < o.a; }
};

}  // namespace divfan
